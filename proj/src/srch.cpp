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

#include "srchol/srch.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "srchol/linalg.hpp"

namespace srchol {

namespace {

void refresh_residual_diag(PartialCholeskyState& st) {
  st.residual_diag.assign(static_cast<std::size_t>(st.size()), 0.0);
  const auto s = schur_diagonal(st);
  std::copy(s.begin(), s.end(), st.residual_diag.begin() + st.rank);
}

// Replaces pivot `first` (< k) by the alpha pivot sitting at position k.
// Positions first..k are cycled so `first` lands at k, the extended factor
// is restored to lower-trapezoidal form, and its leading k columns become
// the new factor.
void swap_in_alpha_pivot(PartialCholeskyState& st, const AlphaPivot& ap, Index first) {
  const Index n = st.size();
  const Index k = st.rank;

  DenseMatrix ext(n, k + 1);
  ext.eigen().leftCols(k) = st.factor.eigen().leftCols(k);
  for (Index i = k; i < n; ++i) ext(i, k) = ap.extension[static_cast<std::size_t>(i - k)];

  for (Index c = 0; c <= k; ++c) {
    auto col = ext.column(c);
    std::rotate(col.begin() + first, col.begin() + first + 1, col.begin() + k + 1);
  }
  st.perm.rotate_to_back(first, k);

  givens_restore_in_place(ext, first);
  st.factor.eigen().leftCols(k) = ext.eigen().leftCols(k);
  refresh_residual_diag(st);
}

}  // namespace

void SrchConfig::validate(Index n) const {
  if (!(g > 1.0)) throw ParameterError("srch: g must exceed 1");
  if (b < 1) throw ParameterError("srch: block size must be positive");
  if (p < b) throw ParameterError("srch: oversampling p must be >= block size b");
  if (k < 0 || k >= n) throw ParameterError("srch: need 0 <= k < n");
  if (d < 1) throw ParameterError("srch: estimator sample count d must be positive");
  if (max_swaps < 0) throw ParameterError("srch: max_swaps must be nonnegative");
}

AlphaPivot extend_alpha_pivot(PartialCholeskyState& state, double threshold) {
  const Index n = state.size();
  const Index k = state.rank;
  if (k >= n) throw ParameterError("extend_alpha_pivot: factorization is already complete");

  const auto& rd = state.residual_diag;
  const auto best = std::max_element(rd.begin() + k, rd.end());
  if (!(*best > threshold)) throw RankDeficient(k, *best);
  state.swap(k, static_cast<Index>(best - rd.begin()));

  const auto f = state.factor.eigen();
  Eigen::VectorXd col(n - k);
  for (Index i = k; i < n; ++i) col(i - k) = state.entry(i, k);
  if (k > 0) col.noalias() -= f.block(k, 0, n - k, k) * f.row(k).head(k).transpose();
  const double alpha = col(0);
  if (!(alpha > threshold)) throw RankDeficient(k, alpha);
  const double root = std::sqrt(alpha);

  AlphaPivot out;
  out.alpha = alpha;
  out.extension.resize(static_cast<std::size_t>(n - k));
  out.extension[0] = root;
  for (Index i = 1; i < n - k; ++i) out.extension[static_cast<std::size_t>(i)] = col(i) / root;
  out.l_hat = DenseMatrix(k + 1, k + 1);
  out.l_hat.eigen().topLeftCorner(k, k) = f.topLeftCorner(k, k);
  out.l_hat.eigen().row(k).head(k) = f.row(k).head(k);
  out.l_hat(k, k) = root;
  return out;
}

SrCondition sr_condition(const DenseMatrix& l_hat, double alpha, double g, const DenseMatrix& omega) {
  const Index m = l_hat.rows();
  if (l_hat.cols() != m || omega.cols() != m) throw DimensionError("sr_condition: shape mismatch");
  if (omega.rows() < 1) throw ParameterError("sr_condition: need at least one sample row");
  if (!(g > 1.0)) throw ParameterError("sr_condition: g must exceed 1");
  if (!(alpha > 0.0)) throw ParameterError("sr_condition: alpha must be positive");
  for (Index i = 0; i < m; ++i) {
    if (l_hat(i, i) == 0.0) throw SingularTriangular(i);
  }

  // X L_hat = Omega.
  DenseMatrix x = omega;
  auto xm = x.eigen();
  l_hat.eigen().triangularView<Eigen::Lower>().solveInPlace<Eigen::OnTheRight>(xm);

  const auto norms = column_norms(x);
  const auto worst = static_cast<Index>(std::max_element(norms.begin(), norms.end()) - norms.begin());
  SrCondition out;
  out.worst_col = worst;
  out.estimator = norms[static_cast<std::size_t>(worst)] /
                  std::sqrt(g * static_cast<double>(omega.rows()));
  out.holds = 1.0 / std::sqrt(alpha) >= out.estimator;
  return out;
}

SrchResult srch(const DenseMatrix& a, const SrchConfig& cfg) {
  if (a.rows() != a.cols()) throw DimensionError("srch: matrix is not square");
  const Index n = a.rows();
  cfg.validate(n);
  const Index k = cfg.k;
  const double tol = cfg.tol < 0.0 ? static_cast<double>(n) * kEpsilon : cfg.tol;
  const double threshold = tol * a.eigen().diagonal().maxCoeff();
  const Index max_swaps = cfg.max_swaps > 0 ? cfg.max_swaps : n;

  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  RngStream rng(cfg.seed);
  RandomizedCholesky rc =
      randomized_blocked_cholesky(a, RandomizedOptions{cfg.b, cfg.p, k, cfg.tol}, rng);
  PartialCholeskyState& st = rc.state;
  const auto t1 = Clock::now();

  SrchDiagnostics diag;
  diag.projection_seconds = rc.projection_seconds;
  diag.init_seconds = std::chrono::duration<double>(t1 - t0).count();
  diag.tau_bound = cfg.g * static_cast<double>(n - k) * static_cast<double>(k + 1);

  if (rc.early_stop) {
    diag.rank_deficient = true;
    diag.converged = true;
  } else {
    DenseMatrix omega = gaussian_matrix(cfg.d, k + 1, rng);
    while (true) {
      AlphaPivot ap;
      try {
        ap = extend_alpha_pivot(st, threshold);
      } catch (const RankDeficient& e) {
        diag.alpha = std::max(e.alpha(), 0.0);
        diag.estimator = 0.0;
        diag.rank_deficient = true;
        diag.converged = true;
        break;
      }
      const SrCondition cond = sr_condition(ap.l_hat, ap.alpha, cfg.g, omega);
      diag.alpha = ap.alpha;
      diag.estimator = cond.estimator;
      if (cond.holds) {
        diag.converged = true;
        break;
      }
      if (diag.swaps >= max_swaps) {
        diag.max_swaps_reached = true;
        break;
      }
      if (cond.worst_col == k) {
        diag.degenerate = true;
        break;
      }
      swap_in_alpha_pivot(st, ap, cond.worst_col);
      ++diag.swaps;
      if (cfg.redraw_estimator) omega = gaussian_matrix(cfg.d, k + 1, rng);
    }
  }

  diag.swap_seconds = std::chrono::duration<double>(Clock::now() - t1).count();

  SrchResult out;
  out.perm = st.perm;
  out.L = st.lower();
  diag.rank = st.rank;
  const auto sd = schur_diagonal(st);
  diag.residual_trace = std::accumulate(sd.begin(), sd.end(), 0.0);
  out.diagnostics = diag;
  return out;
}

SrchResult srch_truncated(const DenseMatrix& a, const SrchConfig& cfg, Index k_hat) {
  if (a.rows() != a.cols()) throw DimensionError("srch_truncated: matrix is not square");
  const Index n = a.rows();
  if (!(cfg.k < k_hat && k_hat < n)) throw ParameterError("srch_truncated: need k < k_hat < n");
  SrchConfig wide = cfg;
  wide.k = k_hat;
  SrchResult out = srch(a, wide);
  const Index keep = std::min(cfg.k, out.L.cols());
  out.L = svd_truncate(out.L, keep);
  out.diagnostics.rank = keep;
  out.diagnostics.residual_trace = trace(a) - out.L.eigen().squaredNorm();
  return out;
}

}  // namespace srchol
