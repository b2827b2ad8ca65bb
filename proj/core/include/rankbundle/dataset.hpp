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

#ifndef RANKBUNDLE_DATASET_HPP_
#define RANKBUNDLE_DATASET_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rankbundle/pairloss.hpp"
#include "rankbundle/sparse_matrix.hpp"

namespace rankbundle {

/// Feature matrix, real-valued utility scores and optional query ids.
/// An empty `qid` means one global ranking over all examples.
struct Dataset {
  SparseMatrix x;
  std::vector<double> y;
  std::vector<std::int64_t> qid;

  std::size_t examples() const noexcept { return y.size(); }
  std::size_t features() const noexcept { return x.features(); }
  bool grouped() const noexcept { return !qid.empty(); }

  /// Examples at `indices`, in that order.
  Dataset select(std::span<const std::size_t> indices) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

struct ValidationReport {
  QueryGroups groups;
  std::int64_t pair_count = 0;
  // Labels of query groups without any preference pair; they are ignored.
  std::vector<std::int64_t> skipped_groups;
};

/// Checks shapes and finiteness, builds the group index and the pair
/// counts. Throws DegenerateDatasetError for an empty dataset or when no
/// group has a preference pair, DimensionMismatchError for inconsistent
/// lengths.
ValidationReport validate(const Dataset& data);

}  // namespace rankbundle

#endif  // RANKBUNDLE_DATASET_HPP_
