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

#ifndef RANKBUNDLE_SVMLIGHT_HPP_
#define RANKBUNDLE_SVMLIGHT_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "rankbundle/dataset.hpp"

namespace rankbundle {

// Line format:
//
//   <target> [qid:<int>] <index>:<value> <index>:<value> ... [# comment]
//
// Indices are 1-based and strictly increasing within a line. Blank and
// comment-only lines are skipped. Either every example carries a qid or
// none does.
struct SvmlightOptions {
  // Feature dimension; inferred as the largest index when unset. Loading a
  // file whose indices exceed it is an error.
  std::optional<std::size_t> dims;
  Storage storage = Storage::kDualView;
};

/// Throws ParseError (with the 1-based line number) on malformed input.
Dataset parse_svmlight(std::istream& in, const SvmlightOptions& options = {});

Dataset read_svmlight_file(const std::string& path,
                           const SvmlightOptions& options = {});

/// Writes values with shortest round-trip formatting, so parsing the output
/// reproduces the dataset exactly.
void write_svmlight(std::ostream& out, const Dataset& data);

void write_svmlight_file(const std::string& path, const Dataset& data);

}  // namespace rankbundle

#endif  // RANKBUNDLE_SVMLIGHT_HPP_
