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

#include "rankbundle/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rankbundle/errors.hpp"

namespace rankbundle {

namespace {

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionMismatchError(std::string(what) + ": vector has length " +
                                 std::to_string(got) + ", expected " +
                                 std::to_string(want));
  }
}

}  // namespace

SparseVectorView SparseMatrix::column(std::size_t j) const {
  const std::size_t begin = col_ptr_[j];
  const std::size_t end = col_ptr_[j + 1];
  return {std::span(col_index_).subspan(begin, end - begin),
          std::span(col_values_).subspan(begin, end - begin)};
}

SparseVectorView SparseMatrix::row(std::size_t i) const {
  if (!has_row_view()) {
    throw std::logic_error("SparseMatrix::row: matrix stored column-only");
  }
  const std::size_t begin = row_ptr_[i];
  const std::size_t end = row_ptr_[i + 1];
  return {std::span(row_index_).subspan(begin, end - begin),
          std::span(row_values_).subspan(begin, end - begin)};
}

std::vector<double> SparseMatrix::transpose_times(std::span<const double> w,
                                                  Access access) const {
  require_length(w.size(), features_, "SparseMatrix::transpose_times");
  const std::size_t m = examples();
  std::vector<double> p(m, 0.0);
  if (access == Access::kColumn) {
    for (std::size_t j = 0; j < m; ++j) {
      double acc = 0.0;
      for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
        acc += col_values_[k] * w[col_index_[k]];
      }
      p[j] = acc;
    }
  } else {
    if (!has_row_view()) {
      throw std::logic_error("SparseMatrix::transpose_times: no row view");
    }
    for (std::size_t i = 0; i < features_; ++i) {
      const double wi = w[i];
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
        p[row_index_[k]] += row_values_[k] * wi;
      }
    }
  }
  return p;
}

std::vector<double> SparseMatrix::times(std::span<const double> v) const {
  return times(v, has_row_view() ? Access::kRow : Access::kColumn);
}

std::vector<double> SparseMatrix::times(std::span<const double> v,
                                        Access access) const {
  require_length(v.size(), examples(), "SparseMatrix::times");
  std::vector<double> out(features_, 0.0);
  if (access == Access::kRow) {
    if (!has_row_view()) {
      throw std::logic_error("SparseMatrix::times: no row view");
    }
    for (std::size_t i = 0; i < features_; ++i) {
      double acc = 0.0;
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
        acc += row_values_[k] * v[row_index_[k]];
      }
      out[i] = acc;
    }
  } else {
    const std::size_t m = examples();
    for (std::size_t j = 0; j < m; ++j) {
      const double vj = v[j];
      if (vj == 0.0) continue;
      for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
        out[col_index_[k]] += col_values_[k] * vj;
      }
    }
  }
  return out;
}

SparseMatrix SparseMatrix::select_examples(
    std::span<const std::size_t> columns) const {
  SparseMatrixBuilder builder;
  for (std::size_t j : columns) {
    if (j >= examples()) {
      throw std::out_of_range("SparseMatrix::select_examples: column " +
                              std::to_string(j));
    }
    const SparseVectorView col = column(j);
    builder.add_example(col.indices, col.values);
  }
  return std::move(builder).build(features_, storage());
}

SparseMatrix SparseMatrix::with_features(std::size_t features) const {
  if (features < features_) {
    throw DimensionMismatchError("cannot shrink a " + std::to_string(features_) +
                                 "-feature matrix to " + std::to_string(features));
  }
  SparseMatrix copy = with_storage(Storage::kColumnOnly);
  copy.features_ = features;
  if (has_row_view()) copy.build_row_view();
  return copy;
}

SparseMatrix SparseMatrix::with_storage(Storage storage) const {
  SparseMatrix copy;
  copy.features_ = features_;
  copy.col_ptr_ = col_ptr_;
  copy.col_index_ = col_index_;
  copy.col_values_ = col_values_;
  if (storage == Storage::kDualView) copy.build_row_view();
  return copy;
}

void SparseMatrix::build_row_view() {
  // Counting sort of the column entries by feature index. Visiting columns
  // in order keeps each row's example indices strictly increasing.
  row_ptr_.assign(features_ + 1, 0);
  for (std::uint32_t i : col_index_) ++row_ptr_[i + 1];
  for (std::size_t i = 0; i < features_; ++i) row_ptr_[i + 1] += row_ptr_[i];
  row_index_.resize(col_index_.size());
  row_values_.resize(col_values_.size());
  std::vector<std::size_t> next(row_ptr_.begin(), row_ptr_.end() - 1);
  const std::size_t m = examples();
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) {
      const std::size_t slot = next[col_index_[k]]++;
      row_index_[slot] = static_cast<std::uint32_t>(j);
      row_values_[slot] = col_values_[k];
    }
  }
}

void SparseMatrixBuilder::add_example(std::span<const std::uint32_t> indices,
                                      std::span<const double> values) {
  if (indices.size() != values.size()) {
    throw std::invalid_argument("add_example: index/value length mismatch");
  }
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (k > 0 && indices[k] <= indices[k - 1]) {
      throw std::invalid_argument("add_example: indices must be strictly increasing");
    }
    if (!std::isfinite(values[k])) {
      throw std::invalid_argument("add_example: non-finite feature value");
    }
  }
  col_index_.insert(col_index_.end(), indices.begin(), indices.end());
  col_values_.insert(col_values_.end(), values.begin(), values.end());
  col_ptr_.push_back(col_index_.size());
  if (!indices.empty()) {
    min_features_ = std::max<std::size_t>(min_features_, indices.back() + std::size_t{1});
  }
}

SparseMatrix SparseMatrixBuilder::build(std::optional<std::size_t> features,
                                        Storage storage) && {
  const std::size_t n = features.value_or(min_features_);
  if (n < min_features_) {
    throw DimensionMismatchError("declared dimension " + std::to_string(n) +
                                 " is smaller than the largest feature index " +
                                 std::to_string(min_features_));
  }
  SparseMatrix matrix;
  matrix.features_ = n;
  matrix.col_ptr_ = std::move(col_ptr_);
  matrix.col_index_ = std::move(col_index_);
  matrix.col_values_ = std::move(col_values_);
  if (storage == Storage::kDualView) matrix.build_row_view();
  col_ptr_ = {0};
  min_features_ = 0;
  return matrix;
}

}  // namespace rankbundle
