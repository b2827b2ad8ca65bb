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

#include "rankbundle/eval.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rankbundle/errors.hpp"

namespace rankbundle {
namespace {

TEST(Predict, Basics) {
  std::mt19937_64 rng(1);
  const testing::Instance inst = testing::random_instance(
      rng, 40, 7, true, testing::LabelRegime::kDistinct, testing::WeightRegime::kRandom);
  EXPECT_EQ(predict(inst.x, std::vector<double>(7, 0.0)), std::vector<double>(40, 0.0));
  EXPECT_TRUE(testing::all_close(predict(inst.x, inst.w),
                                 testing::dense_scores(inst.dense, 40, inst.w), 1e-12));
  EXPECT_THROW(predict(inst.x, std::vector<double>(6, 0.0)), DimensionMismatchError);

  const SparseMatrix identity = testing::from_dense({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}, 3);
  EXPECT_EQ(predict(identity, std::vector{4.0, -1.0, 2.5}), (std::vector{4.0, -1.0, 2.5}));
}

TEST(RankingError, Examples) {
  const std::vector y{0.3, 1.0, -2.0, 5.0};
  EXPECT_EQ(pairwise_ranking_error(y, y).error, 0.0);
  const std::vector neg{-0.3, -1.0, 2.0, -5.0};
  const RankingErrorReport reversed = pairwise_ranking_error(neg, y);
  EXPECT_EQ(reversed.error, 1.0);
  EXPECT_EQ(reversed.swapped, 6);

  const RankingErrorReport r = pairwise_ranking_error(std::vector{1.0, 2.0, 3.0}, std::vector{1.0, 3.0, 2.0});
  EXPECT_DOUBLE_EQ(r.error, 1.0 / 3.0);
  EXPECT_EQ(r.swapped, 1);
  EXPECT_EQ(r.pair_count, 3);
}

TEST(RankingError, ConstantScoresAreAllTies) {
  const RankingErrorReport r = pairwise_ranking_error(std::vector(5, 0.0), std::vector{1.0, 2.0, 2.0, 3.0, 4.0});
  EXPECT_EQ(r.swapped, 0);
  EXPECT_EQ(r.tied_predictions, r.pair_count);
  EXPECT_EQ(r.pair_count, 9);
}

TEST(RankingError, RejectsDegenerateInputs) {
  EXPECT_THROW(pairwise_ranking_error(std::vector{1.0, 2.0}, std::vector{3.0, 3.0}),
               DegenerateDatasetError);
  EXPECT_THROW(pairwise_ranking_error(std::vector{1.0}, std::vector{3.0, 4.0}),
               DimensionMismatchError);
}

TEST(RankingErrorProperty, TreeMatchesBruteForce) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> level(0, 5);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 2 + trial * 3;
    std::vector<double> y(m), s(m);
    for (std::size_t j = 0; j < m; ++j) {
      y[j] = trial % 2 == 0 ? level(rng) : normal(rng);
      s[j] = trial % 3 == 0 ? level(rng) : normal(rng);
    }
    y[0] = -1.0;
    const RankingErrorReport fast = pairwise_ranking_error(s, y);
    const RankingErrorReport slow = brute_force_ranking_error(s, y);
    ASSERT_EQ(fast.swapped, slow.swapped);
    ASSERT_EQ(fast.tied_predictions, slow.tied_predictions);
    ASSERT_EQ(fast.pair_count, slow.pair_count);
    ASSERT_EQ(fast.swapped, testing::direct_swapped(s, y));
    EXPECT_EQ(fast.error, static_cast<double>(fast.swapped) / static_cast<double>(fast.pair_count));
    EXPECT_LE(fast.swapped + fast.tied_predictions, fast.pair_count);
  }
}

TEST(RankingErrorProperty, MatchesOneMinusAuc) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> normal;
  std::bernoulli_distribution coin(0.4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 10 + trial * 5;
    std::vector<double> y(m), s(m);
    std::vector<int> labels(m);
    for (std::size_t j = 0; j < m; ++j) {
      labels[j] = coin(rng) ? 1 : 0;
      y[j] = labels[j];
      s[j] = normal(rng) + labels[j];
    }
    labels[0] = 0;
    y[0] = 0.0;
    labels[1] = 1;
    y[1] = 1.0;
    const RankingErrorReport r = pairwise_ranking_error(s, y);
    EXPECT_EQ(r.swapped, testing::wilcoxon_swapped(s, labels));
  }
}

TEST(RankingErrorProperty, MonotoneMapsKeepTheReport) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> level(0, 3);
  std::vector<double> y(200), s(200), mapped(200);
  for (std::size_t j = 0; j < 200; ++j) {
    y[j] = level(rng);
    s[j] = std::round(normal(rng) * 4.0) / 4.0;
    mapped[j] = std::exp(s[j]) * 3.0 - 7.0;
  }
  const RankingErrorReport a = pairwise_ranking_error(s, y);
  const RankingErrorReport b = pairwise_ranking_error(mapped, y);
  EXPECT_EQ(a.swapped, b.swapped);
  EXPECT_EQ(a.tied_predictions, b.tied_predictions);
  EXPECT_EQ(a.error, b.error);
}

TEST(GroupedRankingError, Examples) {
  const std::vector y{1.0, 3.0, 2.0};
  const std::vector s{1.0, 2.0, 3.0};
  const GroupedRankingErrorReport one = grouped_ranking_error(s, y, std::vector<std::int64_t>(3, 4));
  EXPECT_DOUBLE_EQ(one.mean_error, pairwise_ranking_error(s, y).error);

  // Group 1 ranked perfectly, group 2 fully reversed.
  const GroupedRankingErrorReport two = grouped_ranking_error(
      std::vector{1.0, 2.0, 2.0, 1.0}, std::vector{1.0, 2.0, 1.0, 2.0},
      std::vector<std::int64_t>{1, 1, 2, 2});
  EXPECT_DOUBLE_EQ(two.mean_error, 0.5);
  ASSERT_EQ(two.groups.size(), 2u);
  EXPECT_EQ(two.groups[0].report.error, 0.0);
  EXPECT_EQ(two.groups[1].report.error, 1.0);
  EXPECT_EQ(two.swapped, 1);
  EXPECT_EQ(two.pair_count, 2);
}

TEST(GroupedRankingError, MeanOfPerGroupBruteForce) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> level(0, 2);
  std::uniform_int_distribution<int> group(0, 2);
  const std::size_t m = 90;
  std::vector<double> y(m), s(m);
  std::vector<std::int64_t> q(m);
  for (std::size_t j = 0; j < m; ++j) {
    y[j] = level(rng);
    s[j] = normal(rng);
    q[j] = 100 + group(rng);
  }
  // An extra degenerate group.
  y.push_back(1.0);
  s.push_back(0.0);
  q.push_back(7);

  double mean = 0.0;
  for (std::int64_t label : {100, 101, 102}) {
    std::vector<double> gy, gs;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (q[j] == label) {
        gy.push_back(y[j]);
        gs.push_back(s[j]);
      }
    }
    mean += static_cast<double>(testing::direct_swapped(gs, gy)) /
            static_cast<double>(testing::enumerate_pairs(gy));
  }
  mean /= 3.0;
  const GroupedRankingErrorReport r = grouped_ranking_error(s, y, q);
  EXPECT_NEAR(r.mean_error, mean, 1e-12);
  EXPECT_EQ(r.skipped_groups, 1u);
  EXPECT_EQ(r.groups.size(), 3u);
}

TEST(GroupedRankingError, AllDegenerate) {
  EXPECT_THROW(grouped_ranking_error(std::vector{1.0, 2.0}, std::vector{1.0, 1.0},
                                     std::vector<std::int64_t>{1, 1}),
               DegenerateDatasetError);
}

}  // namespace
}  // namespace rankbundle
