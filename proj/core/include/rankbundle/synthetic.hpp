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

#ifndef RANKBUNDLE_SYNTHETIC_HPP_
#define RANKBUNDLE_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "rankbundle/dataset.hpp"

namespace rankbundle {

enum class SyntheticKind {
  // Dense standard-normal features, y = v.x + noise for a hidden v.
  // Low-dimensional, real-valued scores.
  kDenseRegression,
  // Sparse nonnegative unit-length vectors over a Zipf-skewed vocabulary.
  // One extra example is drawn as the target and dropped; y_i is the dot
  // product with it, so nearly every score is distinct.
  kSparseSimilarity,
};

struct SyntheticOptions {
  SyntheticKind kind = SyntheticKind::kDenseRegression;
  std::size_t examples = 1000;
  std::size_t features = 8;
  // Expected fraction of nonzero features per example (sparse-similarity).
  double sparsity = 1.0;
  std::uint64_t seed = 0;
  // Standard deviation of the additive score noise (dense-regression).
  double noise = 0.0;
  Storage storage = Storage::kDualView;
};

/// Deterministic for a given options value. Throws std::invalid_argument
/// for examples < 2, features < 1, sparsity outside (0, 1] or noise < 0.
Dataset generate_synthetic(const SyntheticOptions& options);

SyntheticKind parse_synthetic_kind(std::string_view name);
std::string to_string(SyntheticKind kind);

}  // namespace rankbundle

#endif  // RANKBUNDLE_SYNTHETIC_HPP_
