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

#ifndef RANKBUNDLE_PAIRLOSS_HPP_
#define RANKBUNDLE_PAIRLOSS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rankbundle/sparse_matrix.hpp"

namespace rankbundle {

// Pairwise hinge risk of a linear ranker,
//
//   R(w) = 1/N * sum_{y_i < y_j} max(0, 1 + w.x_i - w.x_j),
//
// and a subgradient of it. The tree backend counts, for every example, the
// margin-active pairs it takes part in (c_i from below, d_i from above) with
// two sweeps over an order statistics tree, then forms
//
//   R(w) = 1/N * sum_i ((c_i - d_i) p_i + c_i),   a = 1/N * X (c - d)
//
// in O(ms + m log m). The brute backend walks every pair explicitly and is
// kept as the reference.
//
// A pair (i, j) with y_i < y_j is margin-active when p_i > p_j - 1. Both
// backends and both sweeps evaluate exactly this expression, so a pair on
// the hinge kink is excluded everywhere and the two backends select the
// same subgradient.

enum class Backend { kTree, kBrute };

struct FrequencyVectors {
  std::vector<std::int64_t> c;
  std::vector<std::int64_t> d;
};

struct RiskEvaluation {
  double loss = 0.0;
  std::vector<double> subgradient;
  std::int64_t pair_count = 0;
};

struct QueryGroup {
  std::int64_t label = 0;
  std::vector<std::size_t> members;
  std::int64_t pair_count = 0;
};

// Examples partitioned by query id, in ascending label order. Groups with
// zero preference pairs are kept (pair_count == 0) and skipped by the risk.
struct QueryGroups {
  std::vector<QueryGroup> groups;
  // True when there is a single group holding every example in order, so
  // evaluation can work on the full matrix without gathering.
  bool global = false;

  std::int64_t total_pairs() const noexcept;
  std::size_t active_groups() const noexcept;
};

/// Margin predicate for a pair whose lower-utility member scores `p_low`.
inline bool margin_active(double p_low, double p_high) noexcept {
  return p_low > p_high - 1.0;
}

/// N = |{(i, j) : y_i < y_j}| via sorting; 0 when every score ties.
std::int64_t preference_pair_count(std::span<const double> y);

/// Same count, but throws DegenerateDatasetError when N == 0 (including
/// m < 2).
std::int64_t count_preference_pairs(std::span<const double> y);

/// Builds the group index. An empty `qids` yields one global group.
QueryGroups make_query_groups(std::span<const double> y,
                              std::span<const std::int64_t> qids);

/// c and d via two order-statistics-tree sweeps over the examples sorted by p.
FrequencyVectors compute_frequencies(std::span<const double> p,
                                     std::span<const double> y);

/// c and d by enumerating all ordered pairs. O(m^2).
FrequencyVectors brute_force_frequencies(std::span<const double> p,
                                         std::span<const double> y);

/// 1/N * sum_i ((c_i - d_i) p_i + c_i).
double risk_from_frequencies(std::span<const double> p,
                             const FrequencyVectors& freq,
                             std::int64_t pair_count);

RiskEvaluation loss_and_subgradient(const SparseMatrix& x,
                                    std::span<const double> y,
                                    std::span<const double> w,
                                    std::int64_t pair_count);

/// Reference evaluation: explicit double loop, accumulating the hinge value
/// and x_i - x_j for every margin-active pair. O(m^2 s).
RiskEvaluation brute_force_loss_and_subgradient(const SparseMatrix& x,
                                                std::span<const double> y,
                                                std::span<const double> w,
                                                std::int64_t pair_count);

/// Unweighted mean of the per-group risks and subgradients over the groups
/// that have at least one preference pair.
RiskEvaluation grouped_loss_and_subgradient(const SparseMatrix& x,
                                            std::span<const double> y,
                                            std::span<const std::int64_t> qids,
                                            std::span<const double> w,
                                            Backend backend = Backend::kTree);

/// Risk over a prebuilt group index; what the optimizer calls per iteration.
RiskEvaluation evaluate_risk(const SparseMatrix& x, std::span<const double> y,
                             const QueryGroups& groups,
                             std::span<const double> w, Backend backend);

}  // namespace rankbundle

#endif  // RANKBUNDLE_PAIRLOSS_HPP_
