// Copyright 2026 The rankbundle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rankbundle/ostree.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "oracles.hpp"

namespace rankbundle {
namespace {

TEST(OSTree, EmptyTreeCountsNothing) {
  OSTree tree;
  EXPECT_EQ(tree.total(), 0u);
  EXPECT_TRUE(tree.empty());
  EXPECT_EQ(tree.count_smaller(5.0), 0u);
  EXPECT_EQ(tree.count_larger(-3.0), 0u);
  EXPECT_EQ(tree.height(), 0u);
  tree.audit();
}

TEST(OSTree, SingleInsert) {
  OSTree tree;
  tree.insert(7.0);
  EXPECT_EQ(tree.total(), 1u);
  EXPECT_EQ(tree.distinct(), 1u);
  tree.audit();
}

TEST(OSTree, DuplicatesShareANode) {
  OSTree tree;
  tree.insert(3.0);
  tree.insert(3.0);
  EXPECT_EQ(tree.total(), 2u);
  EXPECT_EQ(tree.distinct(), 1u);
  EXPECT_EQ(tree.multiplicity(3.0), 2u);
  EXPECT_EQ(tree.height(), 1u);
  tree.audit();
}

TEST(OSTree, AscendingInsertsStayBalanced) {
  OSTree tree;
  for (int k = 1; k <= 1024; ++k) {
    tree.insert(k);
    tree.audit();
  }
  EXPECT_LE(static_cast<double>(tree.height()), 2.0 * std::log2(1025.0));
}

TEST(OSTree, CountsOnSmallMultiset) {
  OSTree tree;
  for (double k : {5.0, 3.0, 8.0, 3.0}) tree.insert(k);
  EXPECT_EQ(tree.count_smaller(4.0), 2u);
  EXPECT_EQ(tree.count_smaller(3.0), 0u);
  EXPECT_EQ(tree.count_smaller(100.0), 4u);
  EXPECT_EQ(tree.count_larger(4.0), 2u);
  EXPECT_EQ(tree.count_larger(8.0), 0u);
  EXPECT_EQ(tree.count_larger(-1e300), tree.total());
}

TEST(OSTree, RejectsNonFiniteKeys) {
  OSTree tree;
  EXPECT_THROW(tree.insert(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  EXPECT_THROW(tree.insert(std::numeric_limits<double>::infinity()), std::invalid_argument);
  tree.insert(1.0);
  EXPECT_THROW(tree.count_smaller(std::numeric_limits<double>::quiet_NaN()),
               std::invalid_argument);
  EXPECT_THROW(tree.count_larger(-std::numeric_limits<double>::infinity()),
               std::invalid_argument);
  EXPECT_EQ(tree.total(), 1u);
}

TEST(OSTree, SignedZerosAreOneKey) {
  OSTree tree;
  tree.insert(0.0);
  tree.insert(-0.0);
  EXPECT_EQ(tree.distinct(), 1u);
  EXPECT_EQ(tree.count_smaller(0.0), 0u);
  EXPECT_EQ(tree.count_larger(-0.0), 0u);
}

TEST(OSTree, ClearResets) {
  OSTree tree;
  for (int k = 0; k < 50; ++k) tree.insert(k % 7);
  tree.clear();
  EXPECT_TRUE(tree.empty());
  EXPECT_EQ(tree.distinct(), 0u);
  tree.insert(2.0);
  EXPECT_EQ(tree.count_larger(1.0), 1u);
  tree.audit();
}

TEST(OSTreeProperty, MatchesSortedArrayWithHeavyDuplicates) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int range = trial % 2 == 0 ? 50 : 100000;
    std::uniform_int_distribution<int> key(-range, range);
    OSTree tree;
    testing::SortedMultiset oracle;
    const int inserts = 500 + 500 * trial;
    for (int i = 0; i < inserts; ++i) {
      const double k = key(rng) * 0.25;
      tree.insert(k);
      oracle.insert(k);
    }
    tree.audit();
    ASSERT_EQ(tree.total(), oracle.size());
    for (int q = 0; q < 1000; ++q) {
      const double k = key(rng) * 0.25 + (q % 3 == 0 ? 0.125 : 0.0);
      ASSERT_EQ(tree.count_smaller(k), oracle.count_smaller(k)) << "key " << k;
      ASSERT_EQ(tree.count_larger(k), oracle.count_larger(k)) << "key " << k;
      ASSERT_EQ(tree.count_smaller(k) + tree.count_larger(k) + tree.multiplicity(k),
                tree.total());
    }
  }
}

TEST(OSTreeProperty, AuditHoldsAfterEveryInsert) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  OSTree tree;
  for (int i = 0; i < 3000; ++i) {
    tree.insert(i % 5 == 0 ? std::round(normal(rng)) : normal(rng));
    ASSERT_NO_THROW(tree.audit()) << "after insert " << i;
  }
}

TEST(OSTreeProperty, QueryDepthBoundedByHeight) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  OSTree tree;
  for (int i = 0; i < 5000; ++i) tree.insert(uniform(rng));
  for (int q = 0; q < 500; ++q) {
    std::size_t visited = 0;
    tree.count_smaller(uniform(rng), visited);
    EXPECT_LE(visited, tree.height());
  }
}

}  // namespace
}  // namespace rankbundle
