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

#include "srchol/pivoted_cholesky.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "srchol/linalg.hpp"

namespace srchol {

namespace {

void require_square_symmetric(const DenseMatrix& a, const char* who) {
  if (a.rows() != a.cols()) throw DimensionError(std::string(who) + ": matrix is not square");
  if (asymmetry(a) > 1e-10 * std::max(max_abs(a), std::numeric_limits<double>::min())) {
    throw SymmetryError(std::string(who) + ": matrix is not symmetric");
  }
}

double max_diagonal(const DenseMatrix& a) {
  return a.empty() ? 0.0 : a.eigen().diagonal().maxCoeff();
}

double default_tol(double tol, Index n) { return tol < 0.0 ? static_cast<double>(n) * kEpsilon : tol; }

// Symmetric interchange of positions j < p when only the lower triangle of
// columns >= j is meaningful and columns < j hold factor rows (xPSTRF layout).
void swap_lower(DenseMatrix& w, Index j, Index p) {
  const Index n = w.rows();
  std::swap(w(j, j), w(p, p));
  for (Index c = 0; c < j; ++c) std::swap(w(j, c), w(p, c));
  for (Index r = p + 1; r < n; ++r) std::swap(w(r, j), w(r, p));
  for (Index t = j + 1; t < p; ++t) std::swap(w(t, j), w(p, t));
}

Index argmax_from(const std::vector<double>& v, Index first) {
  Index best = first;
  for (Index i = first + 1; i < static_cast<Index>(v.size()); ++i) {
    if (v[static_cast<std::size_t>(i)] > v[static_cast<std::size_t>(best)]) best = i;
  }
  return best;
}

}  // namespace

void PartialCholeskyState::swap(Index i, Index j) {
  if (i == j) return;
  if (i < rank || j < rank) throw ParameterError("PartialCholeskyState::swap: position already eliminated");
  perm.swap(i, j);
  factor.swap_rows(i, j, 0, rank);
  std::swap(residual_diag[static_cast<std::size_t>(i)], residual_diag[static_cast<std::size_t>(j)]);
}

DenseMatrix PartialCholeskyState::lower() const { return factor.block(0, 0, factor.rows(), rank); }

DenseMatrix PartialCholeskyState::permuted() const { return perm.apply_symmetric(*matrix); }

std::vector<double> schur_diagonal(const PartialCholeskyState& state) {
  const Index n = state.size();
  const Index k = state.rank;
  std::vector<double> out(static_cast<std::size_t>(n - k));
  for (Index i = k; i < n; ++i) out[static_cast<std::size_t>(i - k)] = state.entry(i, i);
  for (Index c = 0; c < k; ++c) {
    const double* col = state.factor.column(c).data();
    for (Index i = k; i < n; ++i) out[static_cast<std::size_t>(i - k)] -= col[i] * col[i];
  }
  return out;
}

DenseMatrix left_looking_cholesky(const DenseMatrix& a, Index block) {
  require_square_symmetric(a, "left_looking_cholesky");
  const Index n = a.rows();
  if (block < 1 || block > std::max<Index>(n, 1)) {
    throw ParameterError("left_looking_cholesky: block size must be in [1, n]");
  }
  const double threshold = default_tol(-1.0, n) * max_diagonal(a);
  DenseMatrix l = a;
  auto m = l.eigen();
  for (Index j = 0; j < n; j += block) {
    const Index nb = std::min(block, n - j);
    const Index below = n - j - nb;
    if (j > 0) {
      m.block(j, j, n - j, nb).noalias() -= m.block(j, 0, n - j, j) * m.block(j, 0, nb, j).transpose();
    }
    try {
      cholesky_in_place(m.block(j, j, nb, nb), threshold);
    } catch (const NotPositiveDefinite& e) {
      throw NotPositiveDefinite(j + e.index(), e.pivot());
    }
    if (below > 0) {
      auto panel = m.block(j + nb, j, below, nb);
      m.block(j, j, nb, nb).transpose().triangularView<Eigen::Upper>().solveInPlace<Eigen::OnTheRight>(
          panel);
    }
  }
  m.triangularView<Eigen::StrictlyUpper>().setZero();
  return l;
}

PivotedCholesky diag_pivoted_cholesky(const DenseMatrix& a, Index k, Index block, double tol) {
  require_square_symmetric(a, "diag_pivoted_cholesky");
  const Index n = a.rows();
  if (k < 0 || k > n) throw ParameterError("diag_pivoted_cholesky: need 0 <= k <= n");
  if (block < 1) throw ParameterError("diag_pivoted_cholesky: block size must be positive");
  const double threshold = default_tol(tol, n) * max_diagonal(a);

  DenseMatrix w = a;
  auto m = w.eigen();
  Permutation perm(n);
  // Squared norms of the current panel's part of each factor row.
  std::vector<double> dots(static_cast<std::size_t>(n), 0.0);
  Index rank = 0;
  bool early_stop = false;

  for (Index j0 = 0; j0 < k && !early_stop; j0 += block) {
    const Index jb = std::min(block, k - j0);
    std::fill(dots.begin() + j0, dots.end(), 0.0);
    for (Index j = j0; j < j0 + jb; ++j) {
      Index piv = j;
      double best = w(j, j) - dots[static_cast<std::size_t>(j)];
      for (Index i = j + 1; i < n; ++i) {
        const double v = w(i, i) - dots[static_cast<std::size_t>(i)];
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (!(best > threshold)) {
        early_stop = true;
        break;
      }
      if (piv != j) {
        swap_lower(w, j, piv);
        std::swap(dots[static_cast<std::size_t>(j)], dots[static_cast<std::size_t>(piv)]);
        perm.swap(j, piv);
      }
      const double ajj = std::sqrt(best);
      w(j, j) = ajj;
      const Index below = n - j - 1;
      if (below > 0) {
        if (j > j0) {
          m.block(j + 1, j, below, 1).noalias() -=
              m.block(j + 1, j0, below, j - j0) * m.block(j, j0, 1, j - j0).transpose();
        }
        m.block(j + 1, j, below, 1) /= ajj;
        for (Index i = j + 1; i < n; ++i) {
          dots[static_cast<std::size_t>(i)] += w(i, j) * w(i, j);
        }
      }
      rank = j + 1;
    }
    // Right-looking update of the trailing lower triangle (xSYRK).
    if (!early_stop && rank < k) {
      const Index trailing = n - rank;
      m.bottomRightCorner(trailing, trailing)
          .selfadjointView<Eigen::Lower>()
          .rankUpdate(m.block(rank, j0, trailing, rank - j0), -1.0);
    }
  }

  PivotedCholesky out;
  out.rank = rank;
  out.early_stop = early_stop;
  out.L = DenseMatrix(n, rank);
  out.L.eigen() = m.leftCols(rank).triangularView<Eigen::Lower>();
  out.schur_diag.reserve(static_cast<std::size_t>(n - rank));
  for (Index i = rank; i < n; ++i) out.schur_diag.push_back(w(i, i) - dots[static_cast<std::size_t>(i)]);
  out.perm = std::move(perm);
  return out;
}

void update_projection(ProjectionState& projection, const PartialCholeskyState& state, Index j,
                       Index nb) {
  const Index n = state.size();
  const Index trailing = n - j - nb;
  if (trailing <= 0 || nb <= 0) return;
  const auto f = state.factor.eigen();
  const EigenMatrix w = projection.omega.eigen().rightCols(n - j) * f.block(j, j, n - j, nb);
  projection.sketch.eigen().rightCols(trailing).noalias() -= w * f.block(j + nb, j, trailing, nb).transpose();
}

PivotedCholesky RandomizedCholesky::result() const {
  PivotedCholesky out;
  out.perm = state.perm;
  out.L = state.lower();
  out.schur_diag = schur_diagonal(state);
  out.rank = state.rank;
  out.early_stop = early_stop;
  return out;
}

RandomizedCholesky randomized_blocked_cholesky(const DenseMatrix& a, const RandomizedOptions& opts,
                                               RngStream& rng, const RoundObserver& observer) {
  require_square_symmetric(a, "randomized_blocked_cholesky");
  const Index n = a.rows();
  const Index b = opts.block;
  const Index p = opts.oversample;
  const Index k = opts.rank;
  if (b < 1) throw ParameterError("randomized_blocked_cholesky: block size must be positive");
  if (p < b) throw ParameterError("randomized_blocked_cholesky: oversampling p must be >= block size b");
  if (k < 0 || k > n) throw ParameterError("randomized_blocked_cholesky: need 0 <= k <= n");
  const double threshold = default_tol(opts.tol, n) * max_diagonal(a);

  RandomizedCholesky out;
  PartialCholeskyState& st = out.state;
  st.matrix = &a;
  st.perm = Permutation(n);
  st.factor = DenseMatrix(n, k);
  st.residual_diag = a.diagonal_values();

  ProjectionState& proj = out.projection;
  const auto t0 = std::chrono::steady_clock::now();
  proj.omega = gaussian_matrix(p, n, rng);
  proj.sketch = DenseMatrix(p, n);
  proj.sketch.eigen().noalias() = proj.omega.eigen() * a.eigen();
  out.projection_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double qrcp_zero = static_cast<double>(n) * kEpsilon * norm_2_1(proj.sketch);

  auto f = st.factor.eigen();

  auto swap_positions = [&](Index i, Index j) {
    st.swap(i, j);
    proj.sketch.swap_columns(i, j);
    proj.omega.swap_columns(i, j);
  };

  for (Index j = 0; j < k; j += b) {
    Index nb = std::min(b, k - j);
    if (!(*std::max_element(st.residual_diag.begin() + j, st.residual_diag.end()) > threshold)) {
      out.early_stop = true;
      break;
    }

    // Block pivots from the sketch of the current Schur complement.
    const QrcpPivots qr = partial_qrcp(proj.sketch.block(0, j, p, n - j), nb, qrcp_zero);
    std::vector<Index> column_at(static_cast<std::size_t>(n - j));
    std::iota(column_at.begin(), column_at.end(), Index{0});
    std::vector<Index> position_of = column_at;
    for (Index t = 0; t < nb; ++t) {
      Index src;
      if (t < qr.numerical_rank) {
        src = position_of[static_cast<std::size_t>(qr.pivots[static_cast<std::size_t>(t)])];
      } else {
        // Sketch carries no more information: fall back to diagonal pivoting.
        src = argmax_from(st.residual_diag, j + t) - j;
      }
      // Swaps never reach into eliminated positions, so factor rows above j
      // keep their lower-trapezoidal shape.
      if (src < t) throw Error("randomized_blocked_cholesky: pivot reached an eliminated position");
      if (src != t) {
        swap_positions(j + t, j + src);
        const Index moved = column_at[static_cast<std::size_t>(t)];
        const Index picked = column_at[static_cast<std::size_t>(src)];
        column_at[static_cast<std::size_t>(t)] = picked;
        column_at[static_cast<std::size_t>(src)] = moved;
        position_of[static_cast<std::size_t>(picked)] = t;
        position_of[static_cast<std::size_t>(moved)] = src;
      }
    }

    // Left-looking panel: A(j:, j:j+nb) -= L(j:, :j) L(j:j+nb, :j)^T.
    for (Index c = j; c < j + nb; ++c) {
      const double* src = a.column(st.perm[c]).data();
      for (Index r = j; r < n; ++r) f(r, c) = src[st.perm[r]];
    }
    if (j > 0) {
      f.block(j, j, n - j, nb).noalias() -= f.block(j, 0, n - j, j) * f.block(j, 0, nb, j).transpose();
    }
    // Rows below the diagonal block start at j + solved; the block's own
    // rows are finished by cholesky_in_place, including after a failure.
    const Index solved = nb;
    try {
      cholesky_in_place(f.block(j, j, nb, nb), threshold);
    } catch (const NotPositiveDefinite& e) {
      // Keep the columns that factored; the block is rank deficient past them.
      const Index good = e.index();
      f.block(j, j + good, n - j, nb - good).setZero();
      nb = good;
      out.early_stop = true;
    }
    if (nb > 0) {
      f.block(j, j, nb, nb).triangularView<Eigen::StrictlyUpper>().setZero();
      const Index below = n - j - solved;
      if (below > 0) {
        auto panel = f.block(j + solved, j, below, nb);
        f.block(j, j, nb, nb).transpose().triangularView<Eigen::Upper>().solveInPlace<Eigen::OnTheRight>(
            panel);
      }
      st.rank = j + nb;
    }
    if (out.early_stop) {
      st.residual_diag.assign(static_cast<std::size_t>(n), 0.0);
      const auto s = schur_diagonal(st);
      std::copy(s.begin(), s.end(), st.residual_diag.begin() + st.rank);
      if (observer) observer(st, proj, j, nb);
      break;
    }
    for (Index i = j; i < j + nb; ++i) st.residual_diag[static_cast<std::size_t>(i)] = 0.0;
    for (Index c = j; c < j + nb; ++c) {
      for (Index i = j + nb; i < n; ++i) st.residual_diag[static_cast<std::size_t>(i)] -= f(i, c) * f(i, c);
    }

    if (j + nb < k) update_projection(proj, st, j, nb);
    if (observer) observer(st, proj, j, nb);
  }
  return out;
}

}  // namespace srchol
