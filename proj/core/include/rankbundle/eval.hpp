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

#ifndef RANKBUNDLE_EVAL_HPP_
#define RANKBUNDLE_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rankbundle/sparse_matrix.hpp"

namespace rankbundle {

/// Scores f(x_j) = w.x_j for every example.
std::vector<double> predict(const SparseMatrix& x, std::span<const double> w);

// Pairwise ranking error: the fraction of preference pairs (y_i < y_j) that
// the scores order the wrong way round (f_i > f_j). Pairs with f_i == f_j
// are not counted as swapped; tied_predictions reports how many there were
// so a constant scorer is easy to spot.
struct RankingErrorReport {
  double error = 0.0;
  std::int64_t swapped = 0;
  std::int64_t tied_predictions = 0;
  std::int64_t pair_count = 0;
};

/// O(m log m) using an order statistics tree over the utility scores.
/// Throws DegenerateDatasetError when y has no preference pair.
RankingErrorReport pairwise_ranking_error(std::span<const double> scores,
                                          std::span<const double> y);

/// Same quantity by enumerating all pairs.
RankingErrorReport brute_force_ranking_error(std::span<const double> scores,
                                             std::span<const double> y);

struct GroupRankingError {
  std::int64_t label = 0;
  RankingErrorReport report;
};

struct GroupedRankingErrorReport {
  // Unweighted mean of the per-group errors.
  double mean_error = 0.0;
  // Per-group reports for groups with at least one preference pair, in
  // ascending label order.
  std::vector<GroupRankingError> groups;
  std::size_t skipped_groups = 0;
  // Counts summed over the evaluated groups.
  std::int64_t swapped = 0;
  std::int64_t tied_predictions = 0;
  std::int64_t pair_count = 0;
};

/// Throws DegenerateDatasetError when no group has a preference pair.
GroupedRankingErrorReport grouped_ranking_error(std::span<const double> scores,
                                                std::span<const double> y,
                                                std::span<const std::int64_t> qids);

}  // namespace rankbundle

#endif  // RANKBUNDLE_EVAL_HPP_
