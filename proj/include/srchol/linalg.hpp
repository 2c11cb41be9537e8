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

#include <limits>
#include <vector>

#include "srchol/dense_matrix.hpp"
#include "srchol/rng.hpp"

namespace srchol {

inline constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

/// rows x cols matrix of iid N(0,1) samples, filled in column-major order.
DenseMatrix gaussian_matrix(Index rows, Index cols, RngStream& rng);

struct QrcpPivots {
  /// Column indices of M in pivot order.
  std::vector<Index> pivots;
  /// Number of leading pivots whose residual column norm exceeded the zero
  /// tolerance. Pivots past this point were picked among zero columns.
  Index numerical_rank = 0;
};

/// First nb column pivots of Householder QR with column pivoting.
///
/// Greedy: each step takes the column with the largest residual norm
/// (lowest index on ties). Norms are downdated and recomputed from scratch
/// when cancellation has eaten half the digits. Takes M by value.
QrcpPivots partial_qrcp(DenseMatrix m, Index nb, double zero_tol = 0.0);

/// Lower Cholesky factor of a symmetric matrix (only the lower triangle is read).
///
/// Throws NotPositiveDefinite if a pivot is <= tol * reference, where
/// reference is the largest diagonal entry of M unless a positive
/// `reference` is given. tol < 0 selects k * epsilon.
DenseMatrix chol_unblocked(const DenseMatrix& m, double tol = -1.0, double reference = 0.0);

/// In-place kernel behind chol_unblocked. The strict upper triangle of
/// `block` is left untouched.
void cholesky_in_place(Eigen::Ref<EigenMatrix> block, double threshold);

/// X * C^{-T} for lower-triangular C.
DenseMatrix tri_solve_right(const DenseMatrix& x, const DenseMatrix& c);

/// Restores lower-triangular form of the leading square block of `factor`
/// after a cyclic row shift that moved row `first` to the bottom of that
/// block, which leaves it lower Hessenberg from `first` on. Column rotations
/// (r, r+1), r = first .. c-2, preserve factor * factor^T. Entries above the
/// diagonal end exactly zero and the diagonal is made nonnegative.
void givens_restore_in_place(DenseMatrix& factor, Index first = 0);
DenseMatrix givens_restore(DenseMatrix factor, Index first = 0);

/// Largest Euclidean column norm.
double norm_2_1(const DenseMatrix& x);
std::vector<double> column_norms(const DenseMatrix& x);

/// Eigenvalues of a symmetric matrix in non-increasing order.
/// Throws SymmetryError if asymmetry exceeds sym_tol * max|A|.
std::vector<double> sym_eigvals(const DenseMatrix& a, double sym_tol = 1e-10);

/// Singular values in non-increasing order.
std::vector<double> singular_values(const DenseMatrix& x);

/// n x k factor whose Gram product is the best rank-k approximation of
/// L L^T: U_k * Sigma_k from the thin SVD of L.
DenseMatrix svd_truncate(const DenseMatrix& l, Index k);

}  // namespace srchol
