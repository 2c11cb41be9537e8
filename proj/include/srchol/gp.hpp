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

#include "srchol/dense_matrix.hpp"
#include "srchol/kernels.hpp"
#include "srchol/srch.hpp"

namespace srchol {

enum class FactorMethod { diag_pivoted, randomized, srch };

struct GpConfig {
  double lambda = 5e-5;
  KernelSpec kernel;
  Index k = 100;
  FactorMethod method = FactorMethod::srch;
  SrchConfig srch;   // b, p, g, d, seed; k is taken from GpConfig::k

  void validate() const;
};

struct GpPrediction {
  std::vector<double> mean;
  Index rank = 0;             // rank of the factor actually used
  bool reduced_rank = false;  // factorization stopped before k
  double factor_seconds = 0.0;
  double solve_seconds = 0.0;
};

/// Dense solve of (lambda I + A) z = y followed by A_* z. Limited to n <= 5000.
GpPrediction gp_predict_exact(const Dataset& train, const Dataset& test, const GpConfig& cfg);

/// Same prediction with A replaced by P L L^T P^T from the configured driver.
GpPrediction gp_predict_lowrank(const Dataset& train, const Dataset& test, const GpConfig& cfg);

/// (lambda I + P L L^T P^T)^{-1} y through the k x k system lambda I + L^T L.
std::vector<double> woodbury_solve(const Permutation& perm, const DenseMatrix& l, double lambda,
                                   const std::vector<double>& y);

double mse(const std::vector<double>& y_true, const std::vector<double>& y_pred);

}  // namespace srchol
