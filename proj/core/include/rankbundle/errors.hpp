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

#ifndef RANKBUNDLE_ERRORS_HPP_
#define RANKBUNDLE_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rankbundle {

// Base class for recoverable failures caused by the input data or the
// optimizer. Programming errors (bad arguments) use std::invalid_argument.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The utility scores induce no preference pair, so the 1/N risk
// normalization is undefined.
class DegenerateDatasetError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// The inner dual QP hit its step cap before reaching the requested gap.
class SolverError : public Error {
 public:
  SolverError(const std::string& message, double residual_gap)
      : Error(message), residual_gap_(residual_gap) {}

  double residual_gap() const noexcept { return residual_gap_; }

 private:
  double residual_gap_;
};

}  // namespace rankbundle

#endif  // RANKBUNDLE_ERRORS_HPP_
