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

#ifndef RANKBUNDLE_SPARSE_MATRIX_HPP_
#define RANKBUNDLE_SPARSE_MATRIX_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rankbundle {

// Which copies of the data matrix to keep. kDualView stores both a
// per-example (column) and a per-feature (row) copy; kColumnOnly halves
// memory at the price of scatter-based X*v products.
enum class Storage { kDualView, kColumnOnly };

// Selects the copy used for a product (for cross-checking the views).
enum class Access { kColumn, kRow };

struct SparseVectorView {
  std::span<const std::uint32_t> indices;
  std::span<const double> values;

  std::size_t size() const noexcept { return indices.size(); }
};

/// n x m feature matrix whose columns are examples.
///
/// Within each list the indices are strictly increasing and all values are
/// finite. Explicit zeros are kept if supplied.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  std::size_t features() const noexcept { return features_; }
  std::size_t examples() const noexcept { return col_ptr_.empty() ? 0 : col_ptr_.size() - 1; }
  std::size_t nnz() const noexcept { return col_values_.size(); }
  bool has_row_view() const noexcept { return !row_ptr_.empty(); }
  Storage storage() const noexcept {
    return has_row_view() ? Storage::kDualView : Storage::kColumnOnly;
  }

  /// Feature vector of example `j`.
  SparseVectorView column(std::size_t j) const;
  /// Values of feature `i` across examples. Requires the row view.
  SparseVectorView row(std::size_t i) const;

  /// p = X^T w (one score per example).
  std::vector<double> transpose_times(std::span<const double> w,
                                      Access access = Access::kColumn) const;

  /// X v (a feature-space vector). Uses the row view when present.
  std::vector<double> times(std::span<const double> v) const;
  std::vector<double> times(std::span<const double> v, Access access) const;

  /// Matrix made of the given example columns, in the given order.
  SparseMatrix select_examples(std::span<const std::size_t> columns) const;

  /// Same matrix embedded in a larger feature space. Throws
  /// DimensionMismatchError if `features` is smaller than the current one.
  SparseMatrix with_features(std::size_t features) const;

  /// Same matrix with a different storage mode.
  SparseMatrix with_storage(Storage storage) const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.features_ == b.features_ && a.col_ptr_ == b.col_ptr_ &&
           a.col_index_ == b.col_index_ && a.col_values_ == b.col_values_;
  }

 private:
  friend class SparseMatrixBuilder;

  void build_row_view();

  std::size_t features_ = 0;
  std::vector<std::size_t> col_ptr_;
  std::vector<std::uint32_t> col_index_;
  std::vector<double> col_values_;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> row_index_;
  std::vector<double> row_values_;
};

/// Accumulates examples column by column.
class SparseMatrixBuilder {
 public:
  SparseMatrixBuilder() { col_ptr_.push_back(0); }

  /// Appends one example. Indices are 0-based and strictly increasing;
  /// values must be finite. Throws std::invalid_argument otherwise.
  void add_example(std::span<const std::uint32_t> indices,
                   std::span<const double> values);

  std::size_t examples() const noexcept { return col_ptr_.size() - 1; }
  /// 1 + the largest index seen, or 0.
  std::size_t min_features() const noexcept { return min_features_; }

  /// Finalizes the matrix. `features` overrides the inferred dimension and
  /// must be at least min_features().
  SparseMatrix build(std::optional<std::size_t> features = std::nullopt,
                     Storage storage = Storage::kDualView) &&;

 private:
  std::size_t min_features_ = 0;
  std::vector<std::size_t> col_ptr_;
  std::vector<std::uint32_t> col_index_;
  std::vector<double> col_values_;
};

}  // namespace rankbundle

#endif  // RANKBUNDLE_SPARSE_MATRIX_HPP_
