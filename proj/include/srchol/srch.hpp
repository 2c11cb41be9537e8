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

#include <cstdint>
#include <vector>

#include "srchol/dense_matrix.hpp"
#include "srchol/pivoted_cholesky.hpp"

namespace srchol {

struct SrchConfig {
  Index b = 20;             // block size
  Index p = 30;             // oversampling, p >= b
  Index k = 0;              // target rank, k < n
  double g = 1.5;           // spectrum-revealing slack, g > 1
  Index d = 20;             // rows of the condition estimator's random matrix
  std::uint64_t seed = 0;
  Index max_swaps = 0;      // 0 selects n
  bool redraw_estimator = false;  // draw a fresh estimator matrix after every swap
  double tol = -1.0;        // rank threshold relative to max diag(A); < 0 selects n * epsilon

  /// Throws ParameterError unless g > 1, p >= b, 0 <= k < n, d >= 1.
  void validate(Index n) const;
};

struct SrchDiagnostics {
  double alpha = 0.0;        // largest Schur diagonal at exit
  double estimator = 0.0;    // ||Omega Lhat^{-1}||_{2,1} / sqrt(g d) at exit
  Index swaps = 0;
  double residual_trace = 0.0;
  double tau_bound = 0.0;    // g (n - k) (k + 1)
  Index rank = 0;
  bool converged = false;    // exit condition certified (or vacuous)
  bool rank_deficient = false;
  bool degenerate = false;   // worst column was the extension column itself
  bool max_swaps_reached = false;
  double projection_seconds = 0.0;  // Omega and B = Omega A
  double init_seconds = 0.0;        // randomized blocked driver, projection included
  double swap_seconds = 0.0;        // alpha extension, condition checks and swaps
};

struct SrchResult {
  Permutation perm;
  DenseMatrix L;
  SrchDiagnostics diagnostics;
};

/// The would-be (k+1)-st pivot and the extended triangular factor.
struct AlphaPivot {
  double alpha = 0.0;
  DenseMatrix l_hat;               // (k+1) x (k+1): [L11 0; l^T sqrt(alpha)]
  std::vector<double> extension;   // column k+1 of the extended factor, rows k .. n-1
};

/// Moves the largest Schur diagonal (read from state.residual_diag) to
/// position k = state.rank and computes
/// the extension column with one matrix-vector update. The state's rank is
/// unchanged. Throws RankDeficient when alpha <= threshold.
AlphaPivot extend_alpha_pivot(PartialCholeskyState& state, double threshold);

struct SrCondition {
  bool holds = false;
  double estimator = 0.0;
  Index worst_col = 0;   // argmax column norm of Omega * Lhat^{-1}, lowest index on ties
};

/// Randomized spectrum-revealing test 1/sqrt(alpha) >= ||Omega Lhat^{-1}||_{2,1} / sqrt(g d),
/// with d = omega.rows().
SrCondition sr_condition(const DenseMatrix& l_hat, double alpha, double g, const DenseMatrix& omega);

/// Randomized blocked Cholesky followed by swaps until the spectrum-revealing
/// condition holds or max_swaps is reached.
SrchResult srch(const DenseMatrix& a, const SrchConfig& cfg);

/// SRCH at rank k_hat, then the factor is SVD-truncated to rank cfg.k.
/// diagnostics describe the rank-k_hat run (tau_bound uses k_hat).
SrchResult srch_truncated(const DenseMatrix& a, const SrchConfig& cfg, Index k_hat);

}  // namespace srchol
