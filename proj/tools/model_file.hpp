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

#ifndef RANKBUNDLE_TOOLS_MODEL_FILE_HPP_
#define RANKBUNDLE_TOOLS_MODEL_FILE_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "rankbundle/bmrm.hpp"

namespace rankbundle::cli {

// Versioned text model:
//
//   rankbundle-model 1
//   dims 8
//   lambda 0.1
//   epsilon 0.001
//   converged 1
//   iterations 17
//   w 1:0.25 4:-1.5
//
// Weights are written sparse with 1-based indices in shortest round-trip
// form, so save/load reproduces w bit for bit.
struct ModelFile {
  static constexpr int kFormatVersion = 1;

  int version = kFormatVersion;
  std::size_t dims = 0;
  double lambda = 0.0;
  double epsilon = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<double> w;

  static ModelFile from_model(const RankModel& model);

  friend bool operator==(const ModelFile&, const ModelFile&) = default;
};

void write_model(std::ostream& out, const ModelFile& model);
/// Throws ParseError on malformed or unsupported input.
ModelFile read_model(std::istream& in);

void save_model_file(const std::string& path, const ModelFile& model);
ModelFile load_model_file(const std::string& path);

}  // namespace rankbundle::cli

#endif  // RANKBUNDLE_TOOLS_MODEL_FILE_HPP_
