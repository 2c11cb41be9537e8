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

#include "srchol/dense_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace srchol {

namespace {

void require_shape(Index rows, Index cols) {
  if (rows < 0 || cols < 0) {
    throw DimensionError("negative matrix dimension " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

}  // namespace

DenseMatrix::DenseMatrix(Index rows, Index cols) : DenseMatrix(rows, cols, 0.0) {}

DenseMatrix::DenseMatrix(Index rows, Index cols, double fill) : rows_(rows), cols_(cols) {
  require_shape(rows, cols);
  data_.assign(static_cast<std::size_t>(rows * cols), fill);
}

DenseMatrix DenseMatrix::from_column_major(Index rows, Index cols, std::vector<double> data) {
  require_shape(rows, cols);
  if (static_cast<Index>(data.size()) != rows * cols) {
    throw DimensionError("data length " + std::to_string(data.size()) + " does not match " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  DenseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(data);
  if (!m.all_finite()) throw ParameterError("matrix data contains NaN or Inf");
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n_rows = static_cast<Index>(rows.size());
  const Index n_cols = n_rows == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  DenseMatrix m(n_rows, n_cols);
  Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != n_cols) throw DimensionError("ragged row literal");
    Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  if (!m.all_finite()) throw ParameterError("matrix data contains NaN or Inf");
  return m;
}

DenseMatrix DenseMatrix::from_eigen(const EigenMatrix& m) {
  DenseMatrix out(m.rows(), m.cols());
  out.eigen() = m;
  return out;
}

DenseMatrix DenseMatrix::identity(Index n) {
  DenseMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> values) {
  const auto n = static_cast<Index>(values.size());
  DenseMatrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
  return m;
}

DenseMatrix DenseMatrix::block(Index r0, Index c0, Index rows, Index cols) const {
  if (r0 < 0 || c0 < 0 || rows < 0 || cols < 0 || r0 + rows > rows_ || c0 + cols > cols_) {
    throw DimensionError("block out of range");
  }
  DenseMatrix out(rows, cols);
  out.eigen() = eigen().block(r0, c0, rows, cols);
  return out;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix out(cols_, rows_);
  out.eigen() = eigen().transpose();
  return out;
}

std::vector<double> DenseMatrix::diagonal_values() const {
  const Index n = std::min(rows_, cols_);
  std::vector<double> d(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = (*this)(i, i);
  return d;
}

void DenseMatrix::swap_symmetric(Index i, Index j) {
  if (i == j) return;
  swap_columns(i, j);
  swap_rows(i, j);
}

void DenseMatrix::swap_rows(Index i, Index j, Index col_begin, Index col_end) {
  if (i == j) return;
  if (col_end < 0) col_end = cols_;
  double* p = data();
  for (Index c = col_begin; c < col_end; ++c) std::swap(p[i + c * rows_], p[j + c * rows_]);
}

void DenseMatrix::swap_columns(Index i, Index j) {
  if (i == j) return;
  std::swap_ranges(data() + i * rows_, data() + (i + 1) * rows_, data() + j * rows_);
}

bool DenseMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("product: inner dimensions differ");
  DenseMatrix out(a.rows(), b.cols());
  out.eigen().noalias() = a.eigen() * b.eigen();
  return out;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "sum");
  DenseMatrix out(a.rows(), a.cols());
  out.eigen() = a.eigen() + b.eigen();
  return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_shape(a, b, "difference");
  DenseMatrix out(a.rows(), a.cols());
  out.eigen() = a.eigen() - b.eigen();
  return out;
}

void copy_lower_to_upper(DenseMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("copy_lower_to_upper: matrix is not square");
  for (Index c = 1; c < a.cols(); ++c) {
    for (Index r = 0; r < c; ++r) a(r, c) = a(c, r);
  }
}

DenseMatrix gram_outer(const DenseMatrix& a) {
  DenseMatrix out(a.rows(), a.rows());
  out.eigen().noalias() = a.eigen() * a.eigen().transpose();
  return out;
}

double frobenius_norm(const DenseMatrix& a) { return a.eigen().norm(); }

double max_abs(const DenseMatrix& a) {
  return a.empty() ? 0.0 : a.eigen().cwiseAbs().maxCoeff();
}

double trace(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("trace of non-square matrix");
  return a.eigen().trace();
}

double asymmetry(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("symmetry check on non-square matrix");
  double worst = 0.0;
  for (Index c = 1; c < a.cols(); ++c) {
    for (Index r = 0; r < c; ++r) worst = std::max(worst, std::abs(a(r, c) - a(c, r)));
  }
  return worst;
}

Permutation::Permutation(Index n) : entries_(static_cast<std::size_t>(n)) {
  std::iota(entries_.begin(), entries_.end(), Index{0});
}

Permutation::Permutation(std::vector<Index> entries) : entries_(std::move(entries)) {
  if (!is_valid()) throw ParameterError("entries do not form a permutation");
}

void Permutation::swap(Index i, Index j) {
  std::swap(entries_[static_cast<std::size_t>(i)], entries_[static_cast<std::size_t>(j)]);
}

void Permutation::rotate_to_back(Index first, Index last) {
  auto b = entries_.begin();
  std::rotate(b + first, b + first + 1, b + last + 1);
}

Permutation Permutation::inverse() const {
  std::vector<Index> inv(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    inv[static_cast<std::size_t>(entries_[i])] = static_cast<Index>(i);
  }
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& after) const {
  if (after.size() != size()) throw DimensionError("permutation sizes differ");
  std::vector<Index> out(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    out[i] = entries_[static_cast<std::size_t>(after.entries_[i])];
  }
  return Permutation(std::move(out));
}

bool Permutation::is_valid() const {
  std::vector<char> seen(entries_.size(), 0);
  for (Index e : entries_) {
    if (e < 0 || e >= size() || seen[static_cast<std::size_t>(e)]) return false;
    seen[static_cast<std::size_t>(e)] = 1;
  }
  return true;
}

DenseMatrix Permutation::apply_symmetric(const DenseMatrix& a) const {
  if (a.rows() != size() || a.cols() != size()) {
    throw DimensionError("permutation size does not match matrix");
  }
  const Index n = size();
  DenseMatrix out(n, n);
  for (Index c = 0; c < n; ++c) {
    const Index src_c = (*this)[c];
    for (Index r = 0; r < n; ++r) out(r, c) = a((*this)[r], src_c);
  }
  return out;
}

}  // namespace srchol
