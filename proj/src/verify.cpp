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

#include "srchol/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "srchol/linalg.hpp"
#include "srchol/rng.hpp"

namespace srchol {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint64_t kSubsampleSeed = 0x5eed;

void require_factor_shape(const DenseMatrix& a, const DenseMatrix& l) {
  if (a.rows() != a.cols()) throw DimensionError("verify: matrix is not square");
  if (l.rows() != a.rows()) throw DimensionError("verify: factor rows differ from matrix size");
  if (l.cols() > a.rows()) throw DimensionError("verify: factor has more columns than rows");
}

std::vector<double> squared_singular_values(const DenseMatrix& l) {
  auto s = singular_values(l);
  for (double& v : s) v *= v;
  return s;
}

double rounding_floor(const std::vector<double>& eigvals, Index n) {
  return eigvals.empty() ? 0.0 : static_cast<double>(n) * kEpsilon * std::abs(eigvals.front());
}

DenseMatrix residual(const DenseMatrix& a, const Permutation& perm, const DenseMatrix& l) {
  DenseMatrix r = perm.apply_symmetric(a);
  r.eigen().selfadjointView<Eigen::Lower>().rankUpdate(l.eigen(), -1.0);
  copy_lower_to_upper(r);
  return r;
}

double max_abs_eig(const DenseMatrix& m) {
  const auto e = sym_eigvals(m, 1e-8);
  return e.empty() ? 0.0 : std::max(std::abs(e.front()), std::abs(e.back()));
}

double floor_value(double lambda_j, double lambda_tail, double tau) {
  return lambda_j / (1.0 + tau * std::min(1.0, (1.0 + tau) * lambda_tail / lambda_j));
}

// Principal submatrix over the k pivot positions plus a sample of the rest,
// as an explicit (A_sub, L_sub) pair in pivot order.
struct Subproblem {
  DenseMatrix a;
  DenseMatrix l;
};

Subproblem subsample(const DenseMatrix& a, const Permutation& perm, const DenseMatrix& l) {
  const Index n = a.rows();
  const Index k = l.cols();
  if (k + 1 >= kDenseVerifyLimit) {
    throw ParameterError("verify: rank too large for subsampled verification");
  }
  std::vector<Index> rest(static_cast<std::size_t>(n - k));
  std::iota(rest.begin(), rest.end(), k);
  RngStream rng(kSubsampleSeed);
  for (std::size_t i = rest.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_index(i + 1));
    std::swap(rest[i], rest[j]);
  }
  rest.resize(static_cast<std::size_t>(kDenseVerifyLimit - k));
  std::sort(rest.begin(), rest.end());

  std::vector<Index> pos(static_cast<std::size_t>(k));
  std::iota(pos.begin(), pos.end(), Index{0});
  pos.insert(pos.end(), rest.begin(), rest.end());

  const auto m = static_cast<Index>(pos.size());
  Subproblem out{DenseMatrix(m, m), DenseMatrix(m, k)};
  for (Index c = 0; c < m; ++c) {
    const Index src_c = perm[pos[static_cast<std::size_t>(c)]];
    for (Index r = 0; r < m; ++r) out.a(r, c) = a(perm[pos[static_cast<std::size_t>(r)]], src_c);
  }
  for (Index c = 0; c < k; ++c) {
    for (Index r = 0; r < m; ++r) out.l(r, c) = l(pos[static_cast<std::size_t>(r)], c);
  }
  return out;
}

// Shared core of both checks on a matrix small enough for dense oracles.
// `tail` is the eigenvalue index (0-based) entering tau's term and the
// upper bound is lambda_{k+1} * first_term + tau * lambda_tail.
BoundReport check_dense(const DenseMatrix& a, const Permutation& perm, const DenseMatrix& l,
                        double g, Index k_run, bool truncated) {
  const Index n = a.rows();
  const Index k = l.cols();
  const auto eig = sym_eigvals(a);
  const double abs_tol = rounding_floor(eig, n);

  BoundReport r;
  r.k = k;
  r.g = g;
  r.tau_bound = g * static_cast<double>(n - k_run) * static_cast<double>(k_run + 1);
  r.resid_2norm = max_abs_eig(residual(a, perm, l));
  const Index keep = std::min(n, k_run + 1);
  r.lambda_list.assign(eig.begin(), eig.begin() + keep);
  r.sigma_sq_list = squared_singular_values(l);

  const double lambda_next = k < n ? eig[static_cast<std::size_t>(k)] : 0.0;
  const double lambda_tail = k_run < n ? eig[static_cast<std::size_t>(k_run)] : 0.0;
  const double upper = truncated ? lambda_next + r.tau_bound * lambda_tail
                                 : r.tau_bound * lambda_tail;
  r.upper_ok = lambda_next * (1.0 - kBoundSlack) - abs_tol <= r.resid_2norm &&
               r.resid_2norm <= upper * (1.0 + kBoundSlack) + abs_tol;

  r.floor_ok = true;
  r.interlace_ok = true;
  for (Index j = 0; j < k; ++j) {
    const double lam = eig[static_cast<std::size_t>(j)];
    const double s2 = r.sigma_sq_list[static_cast<std::size_t>(j)];
    if (s2 > lam * (1.0 + kInterlaceSlack) + abs_tol) r.interlace_ok = false;
    if (lam > abs_tol && s2 < floor_value(lam, lambda_tail, r.tau_bound) * (1.0 - kBoundSlack) - abs_tol) {
      r.floor_ok = false;
    }
  }
  return r;
}

BoundReport check_any(const DenseMatrix& a, const Permutation& perm, const DenseMatrix& l,
                      double g, Index k_run, bool truncated) {
  require_factor_shape(a, l);
  if (perm.size() != a.rows()) throw DimensionError("verify: permutation size differs");
  if (!(g > 1.0)) throw ParameterError("verify: g must exceed 1");
  if (a.rows() <= kDenseVerifyLimit) return check_dense(a, perm, l, g, k_run, truncated);
  const Subproblem sub = subsample(a, perm, l);
  BoundReport r = check_dense(sub.a, Permutation(sub.a.rows()), sub.l, g, k_run, truncated);
  r.partial = true;
  return r;
}

}  // namespace

ReconstructionNorms reconstruction_norms(const DenseMatrix& a, const Permutation& perm,
                                         const DenseMatrix& l) {
  require_factor_shape(a, l);
  if (perm.size() != a.rows()) throw DimensionError("verify: permutation size differs");
  ReconstructionNorms out;
  out.resid_2norm = max_abs_eig(residual(a, perm, l));
  out.resid_trace = trace(a) - l.eigen().squaredNorm();
  return out;
}

std::vector<double> singular_value_ratios(const std::vector<double>& eigvals, const DenseMatrix& l) {
  const Index k = l.cols();
  if (k > static_cast<Index>(eigvals.size())) throw DimensionError("verify: k exceeds n");
  const double tol = rounding_floor(eigvals, static_cast<Index>(eigvals.size()));
  const auto s2 = squared_singular_values(l);
  std::vector<double> out(static_cast<std::size_t>(k));
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = eigvals[j] > tol ? s2[j] / eigvals[j] : kNaN;
  }
  return out;
}

std::vector<double> singular_value_ratios(const DenseMatrix& a, const DenseMatrix& l) {
  require_factor_shape(a, l);
  return singular_value_ratios(sym_eigvals(a), l);
}

std::vector<double> top_eig_relative_errors(const std::vector<double>& eigvals,
                                            const DenseMatrix& l, Index m) {
  if (m < 0 || m > l.cols()) throw DimensionError("verify: need 0 <= m <= k");
  const auto s2 = squared_singular_values(l);
  std::vector<double> out(static_cast<std::size_t>(m));
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = (eigvals[j] - s2[j]) / eigvals[j];
  return out;
}

std::vector<double> top_eig_relative_errors(const DenseMatrix& a, const DenseMatrix& l, Index m) {
  require_factor_shape(a, l);
  return top_eig_relative_errors(sym_eigvals(a), l, m);
}

double trace_error(const DenseMatrix& a, const DenseMatrix& l) {
  require_factor_shape(a, l);
  const double t = trace(a);
  if (!(t > 0.0)) throw ParameterError("trace_error: trace(A) must be positive");
  return (t - l.eigen().squaredNorm()) / t;
}

BoundReport check_theorem1(const DenseMatrix& a, const Permutation& perm, const DenseMatrix& l,
                           double g) {
  return check_any(a, perm, l, g, l.cols(), false);
}

BoundReport check_truncated_bounds(const DenseMatrix& a, const Permutation& perm,
                                   const DenseMatrix& l, double g, Index k_hat) {
  if (!(l.cols() < k_hat && k_hat < a.rows())) {
    throw ParameterError("check_truncated_bounds: need k < k_hat < n");
  }
  return check_any(a, perm, l, g, k_hat, true);
}

void to_json(nlohmann::json& j, const BoundReport& r) {
  j = nlohmann::json{{"k", r.k},
                     {"g", r.g},
                     {"tau_bound", r.tau_bound},
                     {"resid_2norm", r.resid_2norm},
                     {"lambda_list", r.lambda_list},
                     {"sigma_sq_list", r.sigma_sq_list},
                     {"upper_ok", r.upper_ok},
                     {"floor_ok", r.floor_ok},
                     {"interlace_ok", r.interlace_ok},
                     {"partial", r.partial}};
}

}  // namespace srchol
