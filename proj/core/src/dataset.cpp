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

#include "rankbundle/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rankbundle/errors.hpp"

namespace rankbundle {

Dataset Dataset::select(std::span<const std::size_t> indices) const {
  Dataset out;
  out.x = x.select_examples(indices);
  out.y.reserve(indices.size());
  for (std::size_t i : indices) out.y.push_back(y.at(i));
  if (grouped()) {
    out.qid.reserve(indices.size());
    for (std::size_t i : indices) out.qid.push_back(qid.at(i));
  }
  return out;
}

ValidationReport validate(const Dataset& data) {
  if (data.examples() == 0) {
    throw DegenerateDatasetError("degenerate dataset: no examples");
  }
  if (data.x.examples() != data.examples()) {
    throw DimensionMismatchError(
        "dataset has " + std::to_string(data.x.examples()) +
        " feature columns but " + std::to_string(data.examples()) + " scores");
  }
  if (data.grouped() && data.qid.size() != data.examples()) {
    throw DimensionMismatchError(
        "dataset has " + std::to_string(data.qid.size()) + " query ids for " +
        std::to_string(data.examples()) + " examples");
  }
  for (double v : data.y) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("dataset: non-finite utility score");
    }
  }
  // Feature values are finite by SparseMatrixBuilder's contract.

  ValidationReport report;
  report.groups = make_query_groups(data.y, data.qid);
  report.pair_count = report.groups.total_pairs();
  if (report.pair_count == 0) {
    throw DegenerateDatasetError(
        data.grouped()
            ? "degenerate dataset: every query group has tied utility scores"
            : "degenerate dataset: all utility scores are equal");
  }
  for (const QueryGroup& g : report.groups.groups) {
    if (g.pair_count == 0) report.skipped_groups.push_back(g.label);
  }
  return report;
}

}  // namespace rankbundle
