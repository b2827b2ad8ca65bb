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

#include "rankbundle/svmlight.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string_view>
#include <system_error>
#include <vector>

#include "rankbundle/errors.hpp"

namespace rankbundle {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

template <typename T>
bool parse_number(std::string_view text, T& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string quoted(std::string_view token) {
  return "'" + std::string(token) + "'";
}

void append_double(std::string& out, double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  out.append(buffer, ptr);
}

}  // namespace

Dataset parse_svmlight(std::istream& in, const SvmlightOptions& options) {
  SparseMatrixBuilder builder;
  Dataset data;
  std::optional<bool> has_qid;

  std::vector<std::uint32_t> indices;
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    if (const auto hash = rest.find('#'); hash != std::string_view::npos) {
      rest = rest.substr(0, hash);
    }

    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < rest.size()) {
      while (pos < rest.size() && is_space(rest[pos])) ++pos;
      const std::size_t start = pos;
      while (pos < rest.size() && !is_space(rest[pos])) ++pos;
      if (pos > start) tokens.push_back(rest.substr(start, pos - start));
    }
    if (tokens.empty()) continue;

    double target = 0.0;
    if (!parse_number(tokens[0], target)) {
      throw ParseError(line_no, "malformed target " + quoted(tokens[0]));
    }
    if (!std::isfinite(target)) {
      throw ParseError(line_no, "non-finite target " + quoted(tokens[0]));
    }

    std::size_t first_feature = 1;
    const bool line_has_qid = tokens.size() > 1 && tokens[1].starts_with("qid:");
    if (has_qid.has_value() && *has_qid != line_has_qid) {
      throw ParseError(line_no, "qid must be given on every line or on none");
    }
    has_qid = line_has_qid;
    if (line_has_qid) {
      std::int64_t q = 0;
      if (!parse_number(tokens[1].substr(4), q)) {
        throw ParseError(line_no, "malformed query id " + quoted(tokens[1]));
      }
      data.qid.push_back(q);
      first_feature = 2;
    }

    indices.clear();
    values.clear();
    for (std::size_t t = first_feature; t < tokens.size(); ++t) {
      const std::string_view token = tokens[t];
      const auto colon = token.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(line_no, "expected <index>:<value>, got " + quoted(token));
      }
      std::uint64_t index = 0;
      double value = 0.0;
      if (!parse_number(token.substr(0, colon), index)) {
        throw ParseError(line_no, "malformed feature index " + quoted(token));
      }
      if (index == 0) {
        throw ParseError(line_no, "feature indices are 1-based, got " + quoted(token));
      }
      if (index > std::numeric_limits<std::uint32_t>::max()) {
        throw ParseError(line_no, "feature index too large " + quoted(token));
      }
      if (options.dims.has_value() && index > *options.dims) {
        throw ParseError(line_no, "feature index " + std::to_string(index) +
                                      " exceeds declared dimension " +
                                      std::to_string(*options.dims));
      }
      if (!parse_number(token.substr(colon + 1), value)) {
        throw ParseError(line_no, "malformed feature value " + quoted(token));
      }
      if (!std::isfinite(value)) {
        throw ParseError(line_no, "non-finite feature value " + quoted(token));
      }
      const auto zero_based = static_cast<std::uint32_t>(index - 1);
      if (!indices.empty() && zero_based <= indices.back()) {
        throw ParseError(line_no, "feature indices must be strictly increasing at " +
                                      quoted(token));
      }
      indices.push_back(zero_based);
      values.push_back(value);
    }
    builder.add_example(indices, values);
    data.y.push_back(target);
  }
  if (in.bad()) throw Error("I/O error while reading svmlight data");

  data.x = std::move(builder).build(options.dims, options.storage);
  return data;
}

Dataset read_svmlight_file(const std::string& path, const SvmlightOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return parse_svmlight(in, options);
}

void write_svmlight(std::ostream& out, const Dataset& data) {
  std::string line;
  for (std::size_t j = 0; j < data.examples(); ++j) {
    line.clear();
    append_double(line, data.y[j]);
    if (data.grouped()) {
      line += " qid:";
      line += std::to_string(data.qid[j]);
    }
    const SparseVectorView col = data.x.column(j);
    for (std::size_t k = 0; k < col.size(); ++k) {
      line += ' ';
      line += std::to_string(col.indices[k] + std::uint64_t{1});
      line += ':';
      append_double(line, col.values[k]);
    }
    line += '\n';
    out << line;
  }
}

void write_svmlight_file(const std::string& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_svmlight(out, data);
  if (!out) throw Error("I/O error while writing '" + path + "'");
}

}  // namespace rankbundle
