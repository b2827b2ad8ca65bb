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

#include "rankbundle/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace rankbundle {

namespace {

void check_options(const SyntheticOptions& o) {
  if (o.examples < 2) throw std::invalid_argument("synthetic: need at least 2 examples");
  if (o.features < 1) throw std::invalid_argument("synthetic: need at least 1 feature");
  if (o.features > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("synthetic: too many features");
  }
  if (!(o.sparsity > 0.0 && o.sparsity <= 1.0)) {
    throw std::invalid_argument("synthetic: sparsity must lie in (0, 1]");
  }
  if (!(o.noise >= 0.0) || !std::isfinite(o.noise)) {
    throw std::invalid_argument("synthetic: noise must be a finite value >= 0");
  }
}

Dataset dense_regression(const SyntheticOptions& o, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> hidden(o.features);
  for (double& v : hidden) v = normal(rng);

  std::vector<std::uint32_t> indices(o.features);
  for (std::uint32_t i = 0; i < indices.size(); ++i) indices[i] = i;

  SparseMatrixBuilder builder;
  Dataset data;
  data.y.reserve(o.examples);
  std::vector<double> row(o.features);
  for (std::size_t j = 0; j < o.examples; ++j) {
    double score = 0.0;
    for (std::size_t i = 0; i < o.features; ++i) {
      row[i] = normal(rng);
      score += hidden[i] * row[i];
    }
    if (o.noise > 0.0) score += o.noise * normal(rng);
    builder.add_example(indices, row);
    data.y.push_back(score);
  }
  data.x = std::move(builder).build(o.features, o.storage);
  return data;
}

// Share of support draws taken from the Zipf law; the rest are uniform.
// A heavy head makes most documents share a few common terms with the
// target, so almost no score is exactly zero.
constexpr double kZipfShare = 0.8;

// Draws `count` distinct feature ids from the Zipf/uniform mixture.
void draw_support(std::size_t count, std::size_t n,
                  std::discrete_distribution<std::uint32_t>& zipf,
                  std::mt19937_64& rng, std::vector<std::uint32_t>& out) {
  out.clear();
  std::uniform_int_distribution<std::uint32_t> uniform(
      0, static_cast<std::uint32_t>(n - 1));
  if (count * 2 > n) {
    // Dense regime: Floyd's algorithm for a uniform subset.
    std::unordered_set<std::uint32_t> chosen;
    for (std::size_t r = n - count; r < n; ++r) {
      const auto t = std::uniform_int_distribution<std::uint32_t>(
          0, static_cast<std::uint32_t>(r))(rng);
      if (!chosen.insert(t).second) chosen.insert(static_cast<std::uint32_t>(r));
    }
    out.assign(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return;
  }
  std::bernoulli_distribution from_zipf(kZipfShare);
  while (out.size() < count) {
    for (std::size_t k = out.size(); k < count; ++k) {
      out.push_back(from_zipf(rng) ? zipf(rng) : uniform(rng));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
}

Dataset sparse_similarity(const SyntheticOptions& o, std::mt19937_64& rng) {
  const std::size_t n = o.features;
  std::vector<double> weights(n);
  for (std::size_t k = 0; k < n; ++k) weights[k] = 1.0 / static_cast<double>(k + 1);
  std::discrete_distribution<std::uint32_t> zipf(weights.begin(), weights.end());
  std::binomial_distribution<std::size_t> support_size(n, o.sparsity);
  std::uniform_real_distribution<double> magnitude(0.05, 1.0);

  // m + 1 examples; one becomes the target.
  const std::size_t total = o.examples + 1;
  std::vector<std::vector<std::uint32_t>> support(total);
  std::vector<std::vector<double>> value(total);
  for (std::size_t j = 0; j < total; ++j) {
    const std::size_t count = std::max<std::size_t>(1, support_size(rng));
    draw_support(count, n, zipf, rng, support[j]);
    value[j].resize(support[j].size());
    double norm = 0.0;
    for (double& v : value[j]) {
      v = magnitude(rng);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (double& v : value[j]) v /= norm;
  }
  const std::size_t target =
      std::uniform_int_distribution<std::size_t>(0, total - 1)(rng);

  std::vector<double> dense_target(n, 0.0);
  for (std::size_t k = 0; k < support[target].size(); ++k) {
    dense_target[support[target][k]] = value[target][k];
  }

  SparseMatrixBuilder builder;
  Dataset data;
  data.y.reserve(o.examples);
  for (std::size_t j = 0; j < total; ++j) {
    if (j == target) continue;
    double score = 0.0;
    for (std::size_t k = 0; k < support[j].size(); ++k) {
      score += value[j][k] * dense_target[support[j][k]];
    }
    builder.add_example(support[j], value[j]);
    data.y.push_back(score);
  }
  data.x = std::move(builder).build(n, o.storage);
  return data;
}

}  // namespace

Dataset generate_synthetic(const SyntheticOptions& options) {
  check_options(options);
  std::mt19937_64 rng(options.seed);
  switch (options.kind) {
    case SyntheticKind::kDenseRegression:
      return dense_regression(options, rng);
    case SyntheticKind::kSparseSimilarity:
      return sparse_similarity(options, rng);
  }
  throw std::invalid_argument("synthetic: unknown kind");
}

SyntheticKind parse_synthetic_kind(std::string_view name) {
  if (name == "dense-regression") return SyntheticKind::kDenseRegression;
  if (name == "sparse-similarity") return SyntheticKind::kSparseSimilarity;
  throw std::invalid_argument("unknown dataset kind '" + std::string(name) +
                              "' (expected dense-regression or sparse-similarity)");
}

std::string to_string(SyntheticKind kind) {
  return kind == SyntheticKind::kDenseRegression ? "dense-regression"
                                                 : "sparse-similarity";
}

}  // namespace rankbundle
