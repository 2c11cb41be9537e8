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

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "srchol/dense_matrix.hpp"

namespace srchol {

struct ReconstructionNorms {
  double resid_2norm = 0.0;   // largest |eigenvalue| of P^T A P - L L^T
  double resid_trace = 0.0;   // trace(A) - ||L||_F^2
};

ReconstructionNorms reconstruction_norms(const DenseMatrix& a, const Permutation& perm,
                                         const DenseMatrix& l);

/// sigma_j(L)^2 / lambda_j(A) for j = 1..k. Entries where lambda_j is not
/// positive beyond rounding (n * eps * lambda_1) are NaN.
std::vector<double> singular_value_ratios(const DenseMatrix& a, const DenseMatrix& l);
std::vector<double> singular_value_ratios(const std::vector<double>& eigvals, const DenseMatrix& l);

/// (lambda_j - sigma_j^2) / lambda_j for j = 1..m, m <= k.
std::vector<double> top_eig_relative_errors(const DenseMatrix& a, const DenseMatrix& l, Index m);
std::vector<double> top_eig_relative_errors(const std::vector<double>& eigvals,
                                            const DenseMatrix& l, Index m);

/// trace(A - L L^T) / trace(A).
double trace_error(const DenseMatrix& a, const DenseMatrix& l);

struct BoundReport {
  Index k = 0;
  double g = 0.0;
  double tau_bound = 0.0;
  double resid_2norm = 0.0;
  std::vector<double> lambda_list;    // top k+1 eigenvalues of A
  std::vector<double> sigma_sq_list;  // sigma_j(L)^2, j = 1..k
  bool upper_ok = false;
  bool floor_ok = false;
  bool interlace_ok = false;
  bool partial = false;               // checked on a principal submatrix only

  bool all_ok() const noexcept { return upper_ok && floor_ok && interlace_ok; }
};

/// Relative slack for the bound checks and for the interlacing check.
inline constexpr double kBoundSlack = 1e-9;
inline constexpr double kInterlaceSlack = 1e-12;
/// Largest n for which the dense eigensolver runs on the whole matrix.
inline constexpr Index kDenseVerifyLimit = 3000;

/// Checks, with tau = g (n - k)(k + 1) and k = L.cols():
///   upper:     lambda_{k+1} <= ||P^T A P - L L^T||_2 <= tau lambda_{k+1}
///   floor:     sigma_j^2 >= lambda_j / (1 + tau min{1, (1 + tau) lambda_{k+1} / lambda_j})
///   interlace: sigma_j^2 <= lambda_j
/// Every comparison also allows an absolute n * eps * lambda_1 for the
/// rounding of the dense eigensolver. For n above kDenseVerifyLimit the
/// checks run on the principal submatrix holding all k pivots and a random
/// sample of the remaining positions, and `partial` is set.
BoundReport check_theorem1(const DenseMatrix& a, const Permutation& perm, const DenseMatrix& l,
                           double g);

/// Bounds for an SVD-truncated factor L (rank k) taken from a rank-k_hat run:
///   upper:  ||P^T A P - L L^T||_2 <= lambda_{k+1} + tau_hat lambda_{k_hat+1}
///   floor:  sigma_j^2 >= lambda_j / (1 + tau_hat min{1, (1 + tau_hat) lambda_{k_hat+1} / lambda_j})
/// with tau_hat = g (n - k_hat)(k_hat + 1). lambda_list holds k_hat + 1 values.
BoundReport check_truncated_bounds(const DenseMatrix& a, const Permutation& perm,
                                   const DenseMatrix& l, double g, Index k_hat);

void to_json(nlohmann::json& j, const BoundReport& r);

}  // namespace srchol
