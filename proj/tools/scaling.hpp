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

#ifndef RANKBUNDLE_TOOLS_SCALING_HPP_
#define RANKBUNDLE_TOOLS_SCALING_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rankbundle/pairloss.hpp"
#include "rankbundle/synthetic.hpp"

namespace rankbundle::cli {

struct ScalingOptions {
  SyntheticKind kind = SyntheticKind::kSparseSimilarity;
  std::vector<std::size_t> sizes;
  std::size_t features = 50000;
  double sparsity = 0.001;
  std::size_t repeats = 3;
  std::uint64_t seed = 1;
};

struct ScalingPoint {
  std::size_t examples = 0;
  Backend backend = Backend::kTree;
  double mean_seconds = 0.0;
  double stdev_seconds = 0.0;
};

/// Times one risk + subgradient evaluation per repeat (after one untimed
/// warm-up call) at a fixed random w, for every size. Data and w depend
/// only on the seed and the size.
std::vector<ScalingPoint> measure_risk_scaling(const ScalingOptions& options,
                                               Backend backend);

/// Least-squares slope of log(mean_seconds) against log(examples).
double fit_loglog_slope(std::span<const ScalingPoint> points);

std::string to_string(Backend backend);
Backend parse_backend(const std::string& name);

}  // namespace rankbundle::cli

#endif  // RANKBUNDLE_TOOLS_SCALING_HPP_
