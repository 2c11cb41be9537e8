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

#include "srchol/gp.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "srchol/linalg.hpp"
#include "srchol/pivoted_cholesky.hpp"

namespace srchol {

namespace {

constexpr Index kExactLimit = 5000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<double>& require_target(const Dataset& train) {
  if (!train.target) throw ParameterError("gp: training data has no target column");
  return *train.target;
}

void require_compatible(const Dataset& train, const Dataset& test) {
  train.validate();
  if (test.dimension() != train.dimension()) {
    throw DimensionError("gp: train has " + std::to_string(train.dimension()) +
                         " features, test has " + std::to_string(test.dimension()));
  }
}

std::vector<double> cross_times(const Dataset& test, const Dataset& train, const KernelSpec& spec,
                                const Eigen::VectorXd& z) {
  const DenseMatrix cross = rbf_cross(test, train, spec);
  Eigen::VectorXd pred = cross.eigen() * z;
  return {pred.data(), pred.data() + pred.size()};
}

}  // namespace

void GpConfig::validate() const {
  if (!(lambda > 0.0)) throw ParameterError("gp: lambda must be positive");
  if (!(kernel.sigma > 0.0)) throw ParameterError("gp: kernel sigma must be positive");
  if (k < 1) throw ParameterError("gp: rank k must be positive");
}

GpPrediction gp_predict_exact(const Dataset& train, const Dataset& test, const GpConfig& cfg) {
  cfg.validate();
  require_compatible(train, test);
  const auto& y = require_target(train);
  const Index n = train.samples();
  if (n > kExactLimit) {
    throw ParameterError("gp: exact solve is limited to " + std::to_string(kExactLimit) +
                         " training points");
  }

  GpPrediction out;
  const auto t0 = Clock::now();
  DenseMatrix a = rbf_gram(train, cfg.kernel);
  for (Index i = 0; i < n; ++i) a(i, i) += cfg.lambda;
  const DenseMatrix c = left_looking_cholesky(a, std::min<Index>(64, n));
  out.factor_seconds = seconds_since(t0);

  const auto t1 = Clock::now();
  Eigen::VectorXd z = Eigen::Map<const Eigen::VectorXd>(y.data(), n);
  c.eigen().triangularView<Eigen::Lower>().solveInPlace(z);
  c.eigen().transpose().triangularView<Eigen::Upper>().solveInPlace(z);
  out.mean = cross_times(test, train, cfg.kernel, z);
  out.solve_seconds = seconds_since(t1);
  out.rank = n;
  return out;
}

std::vector<double> woodbury_solve(const Permutation& perm, const DenseMatrix& l, double lambda,
                                   const std::vector<double>& y) {
  const Index n = l.rows();
  const Index k = l.cols();
  if (!(lambda > 0.0)) throw ParameterError("woodbury_solve: lambda must be positive");
  if (perm.size() != n || static_cast<Index>(y.size()) != n) {
    throw DimensionError("woodbury_solve: sizes of perm, L and y differ");
  }

  Eigen::VectorXd py(n);
  for (Index i = 0; i < n; ++i) py(i) = y[static_cast<std::size_t>(perm[i])];
  if (k == 0) {
    std::vector<double> out = y;
    for (double& v : out) v /= lambda;
    return out;
  }

  DenseMatrix inner(k, k);
  inner.eigen().selfadjointView<Eigen::Lower>().rankUpdate(l.eigen().transpose());
  for (Index i = 0; i < k; ++i) inner(i, i) += lambda;
  const DenseMatrix c = chol_unblocked(inner, 0.0);

  Eigen::VectorXd t = l.eigen().transpose() * py;
  c.eigen().triangularView<Eigen::Lower>().solveInPlace(t);
  c.eigen().transpose().triangularView<Eigen::Upper>().solveInPlace(t);
  py.noalias() -= l.eigen() * t;
  py /= lambda;

  std::vector<double> out(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) out[static_cast<std::size_t>(perm[i])] = py(i);
  return out;
}

GpPrediction gp_predict_lowrank(const Dataset& train, const Dataset& test, const GpConfig& cfg) {
  cfg.validate();
  require_compatible(train, test);
  const auto& y = require_target(train);
  const Index n = train.samples();
  if (cfg.k > n) throw ParameterError("gp: rank k exceeds the number of training points");

  GpPrediction out;
  const auto t0 = Clock::now();
  const DenseMatrix a = rbf_gram(train, cfg.kernel);
  Permutation perm;
  DenseMatrix l;
  switch (cfg.method) {
    case FactorMethod::diag_pivoted: {
      auto r = diag_pivoted_cholesky(a, cfg.k, 64, cfg.srch.tol);
      perm = std::move(r.perm);
      l = std::move(r.L);
      break;
    }
    case FactorMethod::randomized: {
      RngStream rng(cfg.srch.seed);
      const RandomizedOptions opts{cfg.srch.b, cfg.srch.p, cfg.k, cfg.srch.tol};
      auto r = randomized_blocked_cholesky(a, opts, rng).result();
      perm = std::move(r.perm);
      l = std::move(r.L);
      break;
    }
    case FactorMethod::srch: {
      if (cfg.k >= n) throw ParameterError("gp: srch needs k < n");
      SrchConfig sc = cfg.srch;
      sc.k = cfg.k;
      auto r = srch(a, sc);
      perm = std::move(r.perm);
      l = std::move(r.L);
      break;
    }
  }
  out.factor_seconds = seconds_since(t0);
  out.rank = l.cols();
  out.reduced_rank = out.rank < cfg.k;

  const auto t1 = Clock::now();
  const auto z = woodbury_solve(perm, l, cfg.lambda, y);
  out.mean = cross_times(test, train, cfg.kernel, Eigen::Map<const Eigen::VectorXd>(z.data(), n));
  out.solve_seconds = seconds_since(t1);
  return out;
}

double mse(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
  if (y_true.size() != y_pred.size()) throw DimensionError("mse: length mismatch");
  if (y_true.empty()) throw DimensionError("mse: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double e = y_true[i] - y_pred[i];
    sum += e * e;
  }
  return sum / static_cast<double>(y_true.size());
}

}  // namespace srchol
