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

#include "srchol/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace srchol {

QrcpPivots partial_qrcp(DenseMatrix m, Index nb, double zero_tol) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  if (nb < 0 || nb > std::min(rows, cols)) {
    throw DimensionError("partial_qrcp: nb=" + std::to_string(nb) + " exceeds min(" +
                         std::to_string(rows) + ", " + std::to_string(cols) + ")");
  }
  // Same switch-over point as LAPACK's xLAQP2.
  const double recompute_below = std::sqrt(kEpsilon);

  std::vector<Index> position_to_column(static_cast<std::size_t>(cols));
  std::iota(position_to_column.begin(), position_to_column.end(), Index{0});
  std::vector<double> norm(static_cast<std::size_t>(cols));
  for (Index j = 0; j < cols; ++j) norm[static_cast<std::size_t>(j)] = m.eigen().col(j).norm();
  std::vector<double> norm_ref = norm;

  QrcpPivots out;
  out.pivots.reserve(static_cast<std::size_t>(nb));
  out.numerical_rank = nb;
  auto mat = m.eigen();

  for (Index i = 0; i < nb; ++i) {
    Index pvt = i;
    for (Index j = i + 1; j < cols; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const auto up = static_cast<std::size_t>(pvt);
      if (norm[uj] > norm[up] ||
          (norm[uj] == norm[up] && position_to_column[uj] < position_to_column[up])) {
        pvt = j;
      }
    }
    if (out.numerical_rank == nb && !(norm[static_cast<std::size_t>(pvt)] > zero_tol)) {
      out.numerical_rank = i;
    }
    if (pvt != i) {
      m.swap_columns(i, pvt);
      std::swap(position_to_column[static_cast<std::size_t>(i)],
                position_to_column[static_cast<std::size_t>(pvt)]);
      std::swap(norm[static_cast<std::size_t>(i)], norm[static_cast<std::size_t>(pvt)]);
      std::swap(norm_ref[static_cast<std::size_t>(i)], norm_ref[static_cast<std::size_t>(pvt)]);
    }
    out.pivots.push_back(position_to_column[static_cast<std::size_t>(i)]);

    // Householder reflector H = I - tau v v^T with v(0) = 1 annihilating mat(i+1:, i).
    const Index tail = rows - i - 1;
    const double alpha = mat(i, i);
    const double xnorm = tail > 0 ? mat.col(i).tail(tail).norm() : 0.0;
    if (xnorm == 0.0) continue;
    const double beta = -std::copysign(std::hypot(alpha, xnorm), alpha);
    const double tau = (beta - alpha) / beta;
    mat.col(i).tail(tail) /= (alpha - beta);
    mat(i, i) = beta;

    for (Index j = i + 1; j < cols; ++j) {
      const double w = mat(i, j) + mat.col(i).tail(tail).dot(mat.col(j).tail(tail));
      mat(i, j) -= tau * w;
      mat.col(j).tail(tail) -= (tau * w) * mat.col(i).tail(tail);

      const auto uj = static_cast<std::size_t>(j);
      if (norm[uj] == 0.0) continue;
      const double ratio = std::abs(mat(i, j)) / norm[uj];
      const double shrink = std::max(0.0, (1.0 - ratio) * (1.0 + ratio));
      const double lost = shrink * (norm[uj] / norm_ref[uj]) * (norm[uj] / norm_ref[uj]);
      if (lost <= recompute_below) {
        norm[uj] = mat.col(j).tail(tail).norm();
        norm_ref[uj] = norm[uj];
      } else {
        norm[uj] *= std::sqrt(shrink);
      }
    }
  }
  return out;
}

void cholesky_in_place(Eigen::Ref<EigenMatrix> block, double threshold) {
  const Index n = block.rows();
  if (block.cols() != n) throw DimensionError("cholesky of non-square block");
  for (Index j = 0; j < n; ++j) {
    const double d = block(j, j) - block.row(j).head(j).squaredNorm();
    if (!(d > threshold)) throw NotPositiveDefinite(j, d);
    const double ljj = std::sqrt(d);
    block(j, j) = ljj;
    const Index below = n - j - 1;
    if (below > 0) {
      if (j > 0) {
        block.col(j).tail(below).noalias() -=
            block.bottomLeftCorner(below, j) * block.row(j).head(j).transpose();
      }
      block.col(j).tail(below) /= ljj;
    }
  }
}

DenseMatrix chol_unblocked(const DenseMatrix& m, double tol, double reference) {
  const Index n = m.rows();
  if (n < 1 || m.cols() != n) throw DimensionError("chol_unblocked needs a square matrix, k >= 1");
  if (tol < 0.0) tol = static_cast<double>(n) * kEpsilon;
  if (!(reference > 0.0)) reference = m.eigen().diagonal().maxCoeff();
  DenseMatrix c = m;
  cholesky_in_place(c.eigen(), tol * std::max(reference, 0.0));
  c.eigen().triangularView<Eigen::StrictlyUpper>().setZero();
  return c;
}

DenseMatrix tri_solve_right(const DenseMatrix& x, const DenseMatrix& c) {
  const Index k = c.rows();
  if (c.cols() != k || x.cols() != k) throw DimensionError("tri_solve_right: shape mismatch");
  for (Index i = 0; i < k; ++i) {
    if (c(i, i) == 0.0) throw SingularTriangular(i);
  }
  DenseMatrix out = x;
  auto y = out.eigen();
  c.eigen().transpose().triangularView<Eigen::Upper>().solveInPlace<Eigen::OnTheRight>(y);
  return out;
}

void givens_restore_in_place(DenseMatrix& factor, Index first) {
  const Index c = factor.cols();
  const Index rows = factor.rows();
  if (rows < c) throw DimensionError("givens_restore: fewer rows than columns");
  auto f = factor.eigen();
  for (Index r = first; r + 1 < c; ++r) {
    const double a = f(r, r);
    const double b = f(r, r + 1);
    if (b == 0.0) continue;
    const double h = std::hypot(a, b);
    const double cs = a / h;
    const double sn = b / h;
    // Rows above r are zero in columns r and r + 1.
    for (Index i = r; i < rows; ++i) {
      const double x = f(i, r);
      const double y = f(i, r + 1);
      f(i, r) = cs * x + sn * y;
      f(i, r + 1) = cs * y - sn * x;
    }
    f(r, r) = h;
    f(r, r + 1) = 0.0;
  }
  for (Index r = first; r < c; ++r) {
    if (f(r, r) < 0.0) f.col(r) = -f.col(r);
  }
}

DenseMatrix givens_restore(DenseMatrix factor, Index first) {
  givens_restore_in_place(factor, first);
  return factor;
}

std::vector<double> column_norms(const DenseMatrix& x) {
  std::vector<double> out(static_cast<std::size_t>(x.cols()));
  for (Index c = 0; c < x.cols(); ++c) out[static_cast<std::size_t>(c)] = x.eigen().col(c).norm();
  return out;
}

double norm_2_1(const DenseMatrix& x) {
  const auto norms = column_norms(x);
  return norms.empty() ? 0.0 : *std::max_element(norms.begin(), norms.end());
}

std::vector<double> sym_eigvals(const DenseMatrix& a, double sym_tol) {
  if (a.rows() != a.cols()) throw DimensionError("sym_eigvals: matrix is not square");
  if (a.empty()) return {};
  const double scale = std::max(max_abs(a), std::numeric_limits<double>::min());
  if (asymmetry(a) > sym_tol * scale) throw SymmetryError("sym_eigvals: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<EigenMatrix> solver(a.eigen(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("sym_eigvals: eigensolver did not converge");
  std::vector<double> ev(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

std::vector<double> singular_values(const DenseMatrix& x) {
  if (x.empty()) return {};
  Eigen::BDCSVD<EigenMatrix> svd(x.eigen());
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

DenseMatrix svd_truncate(const DenseMatrix& l, Index k) {
  if (k < 0 || k > l.cols()) {
    throw DimensionError("svd_truncate: k=" + std::to_string(k) + " exceeds rank " +
                         std::to_string(l.cols()));
  }
  if (k > l.rows()) throw DimensionError("svd_truncate: k exceeds row count");
  Eigen::BDCSVD<EigenMatrix> svd(l.eigen(), Eigen::ComputeThinU);
  DenseMatrix out(l.rows(), k);
  out.eigen().noalias() = svd.matrixU().leftCols(k) * svd.singularValues().head(k).asDiagonal();
  return out;
}

}  // namespace srchol
