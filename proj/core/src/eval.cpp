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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rankbundle/errors.hpp"
#include "rankbundle/ostree.hpp"
#include "rankbundle/pairloss.hpp"

namespace rankbundle {

namespace {

void check_lengths(std::span<const double> scores, std::span<const double> y,
                   const char* what) {
  if (scores.size() != y.size()) {
    throw DimensionMismatchError(std::string(what) + ": " +
                                 std::to_string(scores.size()) + " scores for " +
                                 std::to_string(y.size()) + " examples");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument(std::string(what) + ": non-finite prediction");
    }
  }
}

RankingErrorReport finish(std::int64_t swapped, std::int64_t tied,
                          std::int64_t pair_count) {
  RankingErrorReport report;
  report.swapped = swapped;
  report.tied_predictions = tied;
  report.pair_count = pair_count;
  report.error = static_cast<double>(swapped) / static_cast<double>(pair_count);
  return report;
}

}  // namespace

std::vector<double> predict(const SparseMatrix& x, std::span<const double> w) {
  return x.transpose_times(w);
}

RankingErrorReport pairwise_ranking_error(std::span<const double> scores,
                                          std::span<const double> y) {
  check_lengths(scores, y, "pairwise_ranking_error");
  const std::int64_t pair_count = count_preference_pairs(y);

  const std::size_t m = y.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Walk blocks of equal prediction in ascending order. The tree holds the
  // utilities of all strictly lower-scored examples; each of them with a
  // larger utility forms a swapped pair with the current example.
  OSTree tree;
  tree.reserve(m);
  std::int64_t swapped = 0;
  std::int64_t tied = 0;
  std::vector<double> block;
  for (std::size_t begin = 0; begin < m;) {
    std::size_t end = begin;
    block.clear();
    while (end < m && scores[order[end]] == scores[order[begin]]) {
      block.push_back(y[order[end]]);
      ++end;
    }
    for (double label : block) swapped += static_cast<std::int64_t>(tree.count_larger(label));
    tied += preference_pair_count(block);
    for (double label : block) tree.insert(label);
    begin = end;
  }
  return finish(swapped, tied, pair_count);
}

RankingErrorReport brute_force_ranking_error(std::span<const double> scores,
                                             std::span<const double> y) {
  check_lengths(scores, y, "brute_force_ranking_error");
  std::int64_t pairs = 0;
  std::int64_t swapped = 0;
  std::int64_t tied = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (!(y[i] < y[j])) continue;
      ++pairs;
      if (scores[i] > scores[j]) ++swapped;
      if (scores[i] == scores[j]) ++tied;
    }
  }
  if (pairs == 0) {
    throw DegenerateDatasetError(
        "degenerate dataset: utility scores induce no preference pairs");
  }
  return finish(swapped, tied, pairs);
}

GroupedRankingErrorReport grouped_ranking_error(std::span<const double> scores,
                                                std::span<const double> y,
                                                std::span<const std::int64_t> qids) {
  check_lengths(scores, y, "grouped_ranking_error");
  const QueryGroups index = make_query_groups(y, qids);

  GroupedRankingErrorReport report;
  std::vector<double> sg;
  std::vector<double> yg;
  double error_sum = 0.0;
  for (const QueryGroup& group : index.groups) {
    if (group.pair_count == 0) {
      ++report.skipped_groups;
      continue;
    }
    sg.clear();
    yg.clear();
    for (std::size_t i : group.members) {
      sg.push_back(scores[i]);
      yg.push_back(y[i]);
    }
    const RankingErrorReport r = pairwise_ranking_error(sg, yg);
    error_sum += r.error;
    report.swapped += r.swapped;
    report.tied_predictions += r.tied_predictions;
    report.pair_count += r.pair_count;
    report.groups.push_back({group.label, r});
  }
  if (report.groups.empty()) {
    throw DegenerateDatasetError(
        "degenerate dataset: no query group has a preference pair");
  }
  report.mean_error = error_sum / static_cast<double>(report.groups.size());
  return report;
}

}  // namespace rankbundle
