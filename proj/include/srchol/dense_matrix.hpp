// Copyright 2026 The srchol Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <span>
#include <vector>

#include "srchol/errors.hpp"

namespace srchol {

using EigenMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor>;
using MatrixMap = Eigen::Map<EigenMatrix>;
using ConstMatrixMap = Eigen::Map<const EigenMatrix>;

/// Dense column-major matrix of doubles.
///
/// Storage is a single contiguous buffer; element (r, c) lives at
/// data()[r + c * rows()]. Symmetric matrices are stored in full. The
/// eigen() views expose the buffer to Eigen kernels without copying.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(Index rows, Index cols);
  DenseMatrix(Index rows, Index cols, double fill);

  /// Takes ownership of column-major data; rejects non-finite entries.
  static DenseMatrix from_column_major(Index rows, Index cols, std::vector<double> data);
  /// Row-wise literal, e.g. {{4, 2}, {2, 5}}. Rejects ragged or non-finite input.
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static DenseMatrix from_eigen(const EigenMatrix& m);
  static DenseMatrix identity(Index n);
  static DenseMatrix diagonal(std::span<const double> values);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  Index size() const noexcept { return rows_ * cols_; }
  bool empty() const noexcept { return size() == 0; }

  double& operator()(Index r, Index c) { return data_[static_cast<std::size_t>(r + c * rows_)]; }
  double operator()(Index r, Index c) const {
    return data_[static_cast<std::size_t>(r + c * rows_)];
  }

  double* data() noexcept { return data_.data(); }
  const double* data() const noexcept { return data_.data(); }
  std::span<double> column(Index c) { return {data() + c * rows_, static_cast<std::size_t>(rows_)}; }
  std::span<const double> column(Index c) const {
    return {data() + c * rows_, static_cast<std::size_t>(rows_)};
  }
  const std::vector<double>& values() const noexcept { return data_; }

  MatrixMap eigen() { return {data(), rows_, cols_}; }
  ConstMatrixMap eigen() const { return {data(), rows_, cols_}; }

  /// Copy of the rows x cols block starting at (r0, c0).
  DenseMatrix block(Index r0, Index c0, Index rows, Index cols) const;
  DenseMatrix transpose() const;
  std::vector<double> diagonal_values() const;

  /// Swap rows i and j and columns i and j (symmetric permutation).
  void swap_symmetric(Index i, Index j);
  void swap_rows(Index i, Index j, Index col_begin = 0, Index col_end = -1);
  void swap_columns(Index i, Index j);

  bool all_finite() const;
  bool operator==(const DenseMatrix& other) const = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);

/// Overwrites the strict upper triangle with the transpose of the lower one.
void copy_lower_to_upper(DenseMatrix& a);

/// a * a^T
DenseMatrix gram_outer(const DenseMatrix& a);

double frobenius_norm(const DenseMatrix& a);
double max_abs(const DenseMatrix& a);
double trace(const DenseMatrix& a);
/// max |a(i,j) - a(j,i)|; requires a square matrix.
double asymmetry(const DenseMatrix& a);

/// Permutation of {0, ..., n-1}. entries()[i] is the original index now at
/// position i, so (P^T A P)(i, j) = A(entries[i], entries[j]).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(Index n);
  explicit Permutation(std::vector<Index> entries);

  static Permutation identity(Index n) { return Permutation(n); }

  Index size() const noexcept { return static_cast<Index>(entries_.size()); }
  Index operator[](Index i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& entries() const noexcept { return entries_; }

  void swap(Index i, Index j);
  /// Cyclic left shift of positions [first, last]: the entry at `first`
  /// moves to `last`, everything in between moves up by one.
  void rotate_to_back(Index first, Index last);
  Permutation inverse() const;
  Permutation compose(const Permutation& after) const;
  bool is_valid() const;

  /// P^T A P with A square.
  DenseMatrix apply_symmetric(const DenseMatrix& a) const;
  bool operator==(const Permutation& other) const = default;

 private:
  std::vector<Index> entries_;
};

}  // namespace srchol
