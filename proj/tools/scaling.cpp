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

#include "scaling.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace rankbundle::cli {

std::vector<ScalingPoint> measure_risk_scaling(const ScalingOptions& options,
                                               Backend backend) {
  if (options.repeats == 0) throw std::invalid_argument("repeats must be >= 1");
  std::vector<ScalingPoint> points;
  for (std::size_t m : options.sizes) {
    SyntheticOptions gen;
    gen.kind = options.kind;
    gen.examples = m;
    gen.features = options.features;
    gen.sparsity = options.sparsity;
    gen.seed = options.seed * 1000003u + m;
    const Dataset data = generate_synthetic(gen);
    const std::int64_t pairs = count_preference_pairs(data.y);

    std::mt19937_64 rng(gen.seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> w(data.features());
    for (double& v : w) v = normal(rng);

    auto evaluate = [&] {
      return backend == Backend::kTree
                 ? loss_and_subgradient(data.x, data.y, w, pairs)
                 : brute_force_loss_and_subgradient(data.x, data.y, w, pairs);
    };
    volatile double sink = evaluate().loss;

    std::vector<double> seconds;
    for (std::size_t r = 0; r < options.repeats; ++r) {
      const auto start = std::chrono::steady_clock::now();
      sink = evaluate().loss;
      seconds.push_back(
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    (void)sink;

    ScalingPoint point;
    point.examples = m;
    point.backend = backend;
    for (double s : seconds) point.mean_seconds += s;
    point.mean_seconds /= static_cast<double>(seconds.size());
    if (seconds.size() > 1) {
      double ss = 0.0;
      for (double s : seconds) ss += (s - point.mean_seconds) * (s - point.mean_seconds);
      point.stdev_seconds = std::sqrt(ss / static_cast<double>(seconds.size() - 1));
    }
    points.push_back(point);
  }
  return points;
}

double fit_loglog_slope(std::span<const ScalingPoint> points) {
  if (points.size() < 2) throw std::invalid_argument("slope fit needs at least 2 sizes");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const ScalingPoint& p : points) {
    if (!(p.mean_seconds > 0.0)) throw std::invalid_argument("slope fit needs positive timings");
    const double x = std::log(static_cast<double>(p.examples));
    const double y = std::log(p.mean_seconds);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const auto k = static_cast<double>(points.size());
  const double denom = k * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("slope fit needs distinct sizes");
  return (k * sxy - sx * sy) / denom;
}

std::string to_string(Backend backend) {
  return backend == Backend::kTree ? "tree" : "brute";
}

Backend parse_backend(const std::string& name) {
  if (name == "tree") return Backend::kTree;
  if (name == "brute") return Backend::kBrute;
  throw std::invalid_argument("unknown backend '" + name + "' (expected tree or brute)");
}

}  // namespace rankbundle::cli
