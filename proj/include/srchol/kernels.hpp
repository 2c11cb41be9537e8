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

#include <filesystem>
#include <optional>
#include <vector>

#include "srchol/dense_matrix.hpp"
#include "srchol/rng.hpp"

namespace srchol {

/// n samples x d features, with an optional target column.
struct Dataset {
  DenseMatrix features;
  std::optional<std::vector<double>> target;

  Index samples() const noexcept { return features.rows(); }
  Index dimension() const noexcept { return features.cols(); }
  /// Throws ParameterError when the invariants (n, d >= 1, finite, |y| == n) fail.
  void validate() const;
};

struct KernelSpec {
  double sigma = 1.0;
};

/// Reads a comma-separated numeric file. A single non-numeric first line is
/// treated as a header. With has_target the last column becomes the target.
Dataset load_csv(const std::filesystem::path& path, bool has_target);
/// Writes the dataset back (target as the last column), 17 significant digits.
void write_csv(const std::filesystem::path& path, const Dataset& data);

struct FeatureScaling {
  std::vector<double> mean;
  std::vector<double> scale;
};

/// Per-feature mean and standard deviation (zero-variance features keep scale 1).
FeatureScaling fit_standardization(const Dataset& data);
void apply_standardization(Dataset& data, const FeatureScaling& scaling);

/// exp(-|x_i - x_j|^2 / (2 sigma^2)); exactly symmetric with unit diagonal.
DenseMatrix rbf_gram(const Dataset& x, const KernelSpec& spec);
/// Cross covariance: rows index `rows`, columns index `cols`.
DenseMatrix rbf_cross(const Dataset& rows, const Dataset& cols, const KernelSpec& spec);

/// K^T K for the Kahan matrix K = diag(1, s, ..., s^{n-1}) * C, where C is
/// unit upper triangular with -c above the diagonal and s = sqrt(0.9999 - c^2).
DenseMatrix kahan_gram(Index n, double c);

/// Q diag(lambda) Q^T with Haar-random orthonormal Q (n x rank) and
/// lambda_j = decay^(j-1) for j <= rank.
DenseMatrix random_spd(Index n, Index rank, double decay, RngStream& rng);

/// n points with iid N(0,1) coordinates in `dim` dimensions.
Dataset gaussian_cloud(Index n, Index dim, RngStream& rng);

}  // namespace srchol
