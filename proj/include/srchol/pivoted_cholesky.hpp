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

#include <functional>
#include <vector>

#include "srchol/dense_matrix.hpp"
#include "srchol/rng.hpp"

namespace srchol {

/// Partial factorization P^T A P = L L^T + [0 0; 0 S] in progress.
///
/// The state reads A in its original order through `perm` and does not own
/// it: A must outlive the state. `factor` holds L in its leading `rank`
/// columns with zeros above the diagonal. `residual_diag` has one entry per
/// position: diag(S) for positions rank .. n-1 and zero for eliminated
/// positions.
struct PartialCholeskyState {
  const DenseMatrix* matrix = nullptr;
  Permutation perm;
  DenseMatrix factor;
  Index rank = 0;
  std::vector<double> residual_diag;

  Index size() const noexcept { return perm.size(); }
  /// (P^T A P)(i, j).
  double entry(Index i, Index j) const { return (*matrix)(perm[i], perm[j]); }
  /// Symmetric swap of positions i and j (both >= rank) in perm, factor rows
  /// and residual_diag.
  void swap(Index i, Index j);
  /// n x rank copy of the computed factor.
  DenseMatrix lower() const;
  /// P^T A P as an explicit matrix.
  DenseMatrix permuted() const;
};

/// Random matrix Omega (p x n) and sketch B (p x n), column-permuted with
/// the state. After each block round, B's trailing columns equal
/// Omega_trailing * S for the current Schur complement S.
struct ProjectionState {
  DenseMatrix omega;
  DenseMatrix sketch;
};

/// Output of a pivoted driver.
struct PivotedCholesky {
  Permutation perm;
  DenseMatrix L;                    // n x rank, lower trapezoidal
  std::vector<double> schur_diag;   // n - rank entries
  Index rank = 0;
  bool early_stop = false;          // stopped before the requested rank
};

/// Full Cholesky by the blocked left-looking recurrence. The trailing
/// Schur complement is never formed. Errors carry the global column.
DenseMatrix left_looking_cholesky(const DenseMatrix& a, Index block);

/// Greedy diagonal pivoting (the xPSTRF strategy) to rank k: right-looking
/// with a symmetric rank-`block` update of the trailing lower triangle after
/// each panel. Stops early when the largest Schur diagonal drops to
/// tol * max diag(A) (tol < 0 selects n * epsilon).
PivotedCholesky diag_pivoted_cholesky(const DenseMatrix& a, Index k, Index block = 64,
                                      double tol = -1.0);

struct RandomizedOptions {
  Index block = 20;        // b
  Index oversample = 30;   // p >= b
  Index rank = 0;          // k
  double tol = -1.0;       // < 0: n * epsilon
};

struct RandomizedCholesky {
  PartialCholeskyState state;
  ProjectionState projection;
  bool early_stop = false;
  double projection_seconds = 0.0;   // forming Omega and B = Omega A

  PivotedCholesky result() const;
};

/// Called after every block round with the column range [j, j + nb) just factored.
using RoundObserver =
    std::function<void(const PartialCholeskyState&, const ProjectionState&, Index j, Index nb)>;

/// Randomized blocked left-looking pivoted Cholesky. Block pivots come from
/// partial QRCP on the maintained sketch of the Schur complement.
/// The returned state refers to `a`.
RandomizedCholesky randomized_blocked_cholesky(const DenseMatrix& a, const RandomizedOptions& opts,
                                               RngStream& rng, const RoundObserver& observer = {});
RandomizedCholesky randomized_blocked_cholesky(DenseMatrix&& a, const RandomizedOptions& opts,
                                               RngStream& rng,
                                               const RoundObserver& observer = {}) = delete;

/// B(:, j+nb:) -= Omega(:, j:) * L(j:, j:j+nb) * L(j+nb:, j:j+nb)^T
void update_projection(ProjectionState& projection, const PartialCholeskyState& state, Index j,
                       Index nb);

/// diag(S) from the diagonal of P^T A P minus squared row norms of the factor.
std::vector<double> schur_diagonal(const PartialCholeskyState& state);

}  // namespace srchol
