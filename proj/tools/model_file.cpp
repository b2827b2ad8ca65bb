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

#include "model_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>
#include <system_error>

#include "rankbundle/errors.hpp"

namespace rankbundle::cli {

namespace {

constexpr std::string_view kMagic = "rankbundle-model";

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

template <typename T>
T parse_field(std::string_view text, std::size_t line, std::string_view key) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(line, "malformed value for '" + std::string(key) + "': '" +
                               std::string(text) + "'");
  }
  return value;
}

}  // namespace

ModelFile ModelFile::from_model(const RankModel& model) {
  ModelFile file;
  file.dims = model.w.size();
  file.lambda = model.lambda;
  file.epsilon = model.epsilon;
  file.converged = model.converged;
  file.iterations = model.iterations;
  file.w = model.w;
  return file;
}

void write_model(std::ostream& out, const ModelFile& model) {
  out << kMagic << ' ' << model.version << '\n'
      << "dims " << model.dims << '\n'
      << "lambda " << format_double(model.lambda) << '\n'
      << "epsilon " << format_double(model.epsilon) << '\n'
      << "converged " << (model.converged ? 1 : 0) << '\n'
      << "iterations " << model.iterations << '\n'
      << "w";
  for (std::size_t i = 0; i < model.w.size(); ++i) {
    const double v = model.w[i];
    // -0.0 is kept so the round trip is bitwise.
    if (v != 0.0 || std::signbit(v)) out << ' ' << (i + 1) << ':' << format_double(v);
  }
  out << '\n';
}

ModelFile read_model(std::istream& in) {
  ModelFile model;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool have_dims = false, have_lambda = false, have_epsilon = false;
  bool have_converged = false, have_iterations = false, have_w = false;
  std::vector<std::pair<std::size_t, double>> entries;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key)) continue;
    if (!have_header) {
      if (key != kMagic) throw ParseError(line_no, "not a rankbundle model file");
      std::string version;
      fields >> version;
      model.version = parse_field<int>(version, line_no, "version");
      if (model.version != ModelFile::kFormatVersion) {
        throw ParseError(line_no, "unsupported model format version " + version);
      }
      have_header = true;
      continue;
    }
    if (key == "w") {
      std::string token;
      while (fields >> token) {
        const auto colon = token.find(':');
        if (colon == std::string::npos) {
          throw ParseError(line_no, "expected <index>:<value>, got '" + token + "'");
        }
        const auto index = parse_field<std::size_t>(
            std::string_view(token).substr(0, colon), line_no, "w index");
        const auto value = parse_field<double>(
            std::string_view(token).substr(colon + 1), line_no, "w value");
        if (index == 0) throw ParseError(line_no, "weight indices are 1-based");
        entries.emplace_back(index, value);
      }
      have_w = true;
      continue;
    }
    std::string value;
    if (!(fields >> value)) throw ParseError(line_no, "missing value for '" + key + "'");
    if (key == "dims") {
      model.dims = parse_field<std::size_t>(value, line_no, key);
      have_dims = true;
    } else if (key == "lambda") {
      model.lambda = parse_field<double>(value, line_no, key);
      have_lambda = true;
    } else if (key == "epsilon") {
      model.epsilon = parse_field<double>(value, line_no, key);
      have_epsilon = true;
    } else if (key == "converged") {
      model.converged = parse_field<int>(value, line_no, key) != 0;
      have_converged = true;
    } else if (key == "iterations") {
      model.iterations = parse_field<std::size_t>(value, line_no, key);
      have_iterations = true;
    } else {
      throw ParseError(line_no, "unknown field '" + key + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "empty model file");
  if (!(have_dims && have_lambda && have_epsilon && have_converged &&
        have_iterations && have_w)) {
    throw ParseError(line_no, "model file is missing required fields");
  }
  model.w.assign(model.dims, 0.0);
  for (const auto& [index, value] : entries) {
    if (index > model.dims) {
      throw ParseError(line_no, "weight index " + std::to_string(index) +
                                    " exceeds dims " + std::to_string(model.dims));
    }
    model.w[index - 1] = value;
  }
  return model;
}

void save_model_file(const std::string& path, const ModelFile& model) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_model(out, model);
  if (!out) throw Error("I/O error while writing '" + path + "'");
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return read_model(in);
}

}  // namespace rankbundle::cli
