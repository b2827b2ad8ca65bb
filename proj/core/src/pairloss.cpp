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

#include "rankbundle/pairloss.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rankbundle/errors.hpp"
#include "rankbundle/ostree.hpp"

namespace rankbundle {

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double value : v) {
    if (!std::isfinite(value)) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
  }
}

}  // namespace

std::int64_t preference_pair_count(std::span<const double> y) {
  std::vector<double> sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end());
  const auto m = static_cast<std::int64_t>(sorted.size());
  std::int64_t pairs = m * (m - 1) / 2;
  for (std::size_t begin = 0; begin < sorted.size();) {
    std::size_t end = begin + 1;
    while (end < sorted.size() && sorted[end] == sorted[begin]) ++end;
    const auto tie = static_cast<std::int64_t>(end - begin);
    pairs -= tie * (tie - 1) / 2;
    begin = end;
  }
  return pairs;
}

namespace {

void check_inputs(const SparseMatrix& x, std::span<const double> y,
                  std::span<const double> w, const char* what) {
  if (y.size() != x.examples()) {
    throw DimensionMismatchError(std::string(what) + ": " +
                                 std::to_string(y.size()) + " scores for " +
                                 std::to_string(x.examples()) + " examples");
  }
  if (w.size() != x.features()) {
    throw DimensionMismatchError(std::string(what) + ": weight vector has " +
                                 std::to_string(w.size()) + " entries, data has " +
                                 std::to_string(x.features()) + " features");
  }
  require_finite(w, what);
}

void check_pair_count(std::int64_t pair_count, const char* what) {
  if (pair_count < 1) {
    throw std::invalid_argument(std::string(what) + ": pair count must be >= 1");
  }
}

// Adds scale * (hinge sum, sum of x_i - x_j) over the margin-active pairs
// among `members` to (loss, grad).
void accumulate_pairs(const SparseMatrix& x, std::span<const double> y,
                      std::span<const double> p,
                      std::span<const std::size_t> members, double scale,
                      double& loss, std::vector<double>& grad) {
  double hinge_sum = 0.0;
  std::vector<double> local(grad.size(), 0.0);
  for (std::size_t i : members) {
    for (std::size_t j : members) {
      if (!(y[i] < y[j]) || !margin_active(p[i], p[j])) continue;
      hinge_sum += 1.0 + p[i] - p[j];
      const SparseVectorView xi = x.column(i);
      for (std::size_t k = 0; k < xi.size(); ++k) local[xi.indices[k]] += xi.values[k];
      const SparseVectorView xj = x.column(j);
      for (std::size_t k = 0; k < xj.size(); ++k) local[xj.indices[k]] -= xj.values[k];
    }
  }
  loss += scale * hinge_sum;
  for (std::size_t k = 0; k < grad.size(); ++k) grad[k] += scale * local[k];
}

}  // namespace

std::int64_t QueryGroups::total_pairs() const noexcept {
  std::int64_t total = 0;
  for (const QueryGroup& g : groups) total += g.pair_count;
  return total;
}

std::size_t QueryGroups::active_groups() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      groups.begin(), groups.end(),
      [](const QueryGroup& g) { return g.pair_count > 0; }));
}

std::int64_t count_preference_pairs(std::span<const double> y) {
  require_finite(y, "count_preference_pairs");
  const std::int64_t pairs = preference_pair_count(y);
  if (pairs == 0) {
    throw DegenerateDatasetError(
        "degenerate dataset: utility scores induce no preference pairs");
  }
  return pairs;
}

QueryGroups make_query_groups(std::span<const double> y,
                              std::span<const std::int64_t> qids) {
  QueryGroups index;
  if (qids.empty()) {
    QueryGroup all;
    all.members.resize(y.size());
    std::iota(all.members.begin(), all.members.end(), std::size_t{0});
    all.pair_count = preference_pair_count(y);
    index.groups.push_back(std::move(all));
    index.global = true;
    return index;
  }
  if (qids.size() != y.size()) {
    throw DimensionMismatchError("make_query_groups: " +
                                 std::to_string(qids.size()) + " query ids for " +
                                 std::to_string(y.size()) + " examples");
  }

  std::vector<std::size_t> order(y.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return qids[a] < qids[b];
  });
  for (std::size_t begin = 0; begin < order.size();) {
    std::size_t end = begin;
    QueryGroup group;
    group.label = qids[order[begin]];
    std::vector<double> scores;
    while (end < order.size() && qids[order[end]] == group.label) {
      group.members.push_back(order[end]);
      scores.push_back(y[order[end]]);
      ++end;
    }
    group.pair_count = preference_pair_count(scores);
    index.groups.push_back(std::move(group));
    begin = end;
  }
  index.global = index.groups.size() == 1;
  return index;
}

FrequencyVectors compute_frequencies(std::span<const double> p,
                                     std::span<const double> y) {
  if (p.size() != y.size()) {
    throw std::invalid_argument("compute_frequencies: p and y differ in length");
  }
  require_finite(p, "compute_frequencies");
  require_finite(y, "compute_frequencies");

  const std::size_t m = p.size();
  FrequencyVectors freq{std::vector<std::int64_t>(m, 0),
                        std::vector<std::int64_t>(m, 0)};

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return p[a] < p[b]; });

  OSTree tree;
  tree.reserve(m);

  // Forward sweep: when example order[i] is queried, the tree holds the
  // labels of every k with p_i > p_k - 1.
  std::size_t j = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t current = order[i];
    while (j < m && margin_active(p[current], p[order[j]])) {
      tree.insert(y[order[j]]);
      ++j;
    }
    freq.c[current] = static_cast<std::int64_t>(tree.count_larger(y[current]));
  }

  // Backward sweep: the tree holds the labels of every k with p_k > p_i - 1.
  tree.clear();
  std::size_t remaining = m;  // order[0, remaining) not yet inserted
  for (std::size_t i = m; i-- > 0;) {
    const std::size_t current = order[i];
    while (remaining > 0 && margin_active(p[order[remaining - 1]], p[current])) {
      tree.insert(y[order[remaining - 1]]);
      --remaining;
    }
    freq.d[current] = static_cast<std::int64_t>(tree.count_smaller(y[current]));
  }
  return freq;
}

FrequencyVectors brute_force_frequencies(std::span<const double> p,
                                         std::span<const double> y) {
  if (p.size() != y.size()) {
    throw std::invalid_argument("brute_force_frequencies: p and y differ in length");
  }
  const std::size_t m = p.size();
  FrequencyVectors freq{std::vector<std::int64_t>(m, 0),
                        std::vector<std::int64_t>(m, 0)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (y[i] < y[j] && margin_active(p[i], p[j])) {
        ++freq.c[i];
        ++freq.d[j];
      }
    }
  }
  return freq;
}

double risk_from_frequencies(std::span<const double> p,
                             const FrequencyVectors& freq,
                             std::int64_t pair_count) {
  check_pair_count(pair_count, "risk_from_frequencies");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += static_cast<double>(freq.c[i] - freq.d[i]) * p[i] +
           static_cast<double>(freq.c[i]);
  }
  return sum / static_cast<double>(pair_count);
}

RiskEvaluation loss_and_subgradient(const SparseMatrix& x,
                                    std::span<const double> y,
                                    std::span<const double> w,
                                    std::int64_t pair_count) {
  check_inputs(x, y, w, "loss_and_subgradient");
  check_pair_count(pair_count, "loss_and_subgradient");

  const std::vector<double> p = x.transpose_times(w);
  const FrequencyVectors freq = compute_frequencies(p, y);

  std::vector<double> net(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    net[i] = static_cast<double>(freq.c[i] - freq.d[i]);
  }
  RiskEvaluation result;
  result.pair_count = pair_count;
  result.loss = risk_from_frequencies(p, freq, pair_count);
  result.subgradient = x.times(net);
  const double inv = 1.0 / static_cast<double>(pair_count);
  for (double& g : result.subgradient) g *= inv;
  return result;
}

RiskEvaluation brute_force_loss_and_subgradient(const SparseMatrix& x,
                                                std::span<const double> y,
                                                std::span<const double> w,
                                                std::int64_t pair_count) {
  check_inputs(x, y, w, "brute_force_loss_and_subgradient");
  check_pair_count(pair_count, "brute_force_loss_and_subgradient");

  const std::vector<double> p = x.transpose_times(w);
  std::vector<std::size_t> all(p.size());
  std::iota(all.begin(), all.end(), std::size_t{0});

  RiskEvaluation result;
  result.pair_count = pair_count;
  result.subgradient.assign(x.features(), 0.0);
  accumulate_pairs(x, y, p, all, 1.0 / static_cast<double>(pair_count),
                   result.loss, result.subgradient);
  return result;
}

RiskEvaluation grouped_loss_and_subgradient(const SparseMatrix& x,
                                            std::span<const double> y,
                                            std::span<const std::int64_t> qids,
                                            std::span<const double> w,
                                            Backend backend) {
  if (qids.size() != y.size()) {
    throw DimensionMismatchError("grouped_loss_and_subgradient: " +
                                 std::to_string(qids.size()) +
                                 " query ids for " + std::to_string(y.size()) +
                                 " examples");
  }
  return evaluate_risk(x, y, make_query_groups(y, qids), w, backend);
}

RiskEvaluation evaluate_risk(const SparseMatrix& x, std::span<const double> y,
                             const QueryGroups& groups,
                             std::span<const double> w, Backend backend) {
  check_inputs(x, y, w, "evaluate_risk");
  const std::int64_t total = groups.total_pairs();
  if (total == 0) {
    throw DegenerateDatasetError(
        "degenerate dataset: no query group has a preference pair");
  }

  if (groups.global) {
    return backend == Backend::kTree
               ? loss_and_subgradient(x, y, w, total)
               : brute_force_loss_and_subgradient(x, y, w, total);
  }

  const std::vector<double> p = x.transpose_times(w);
  const auto active = static_cast<double>(groups.active_groups());
  RiskEvaluation result;
  result.pair_count = total;

  if (backend == Backend::kTree) {
    std::vector<double> coef(p.size(), 0.0);
    std::vector<double> pg;
    std::vector<double> yg;
    for (const QueryGroup& group : groups.groups) {
      if (group.pair_count == 0) continue;
      pg.clear();
      yg.clear();
      for (std::size_t i : group.members) {
        pg.push_back(p[i]);
        yg.push_back(y[i]);
      }
      const FrequencyVectors freq = compute_frequencies(pg, yg);
      result.loss += risk_from_frequencies(pg, freq, group.pair_count);
      const double inv = 1.0 / static_cast<double>(group.pair_count);
      for (std::size_t k = 0; k < group.members.size(); ++k) {
        coef[group.members[k]] = static_cast<double>(freq.c[k] - freq.d[k]) * inv;
      }
    }
    result.subgradient = x.times(coef);
  } else {
    result.subgradient.assign(x.features(), 0.0);
    for (const QueryGroup& group : groups.groups) {
      if (group.pair_count == 0) continue;
      accumulate_pairs(x, y, p, group.members,
                       1.0 / static_cast<double>(group.pair_count), result.loss,
                       result.subgradient);
    }
  }

  result.loss /= active;
  for (double& g : result.subgradient) g /= active;
  return result;
}

}  // namespace rankbundle
