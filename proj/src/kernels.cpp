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

#include "srchol/kernels.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>

#include "srchol/linalg.hpp"

namespace srchol {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

bool parse_double(std::string_view cell, double& value) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return false;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  return ec == std::errc() && ptr == cell.data() + cell.size() && std::isfinite(value);
}

double squared_distance(const DenseMatrix& a, Index i, const DenseMatrix& b, Index j) {
  double d2 = 0.0;
  for (Index f = 0; f < a.cols(); ++f) {
    const double diff = a(i, f) - b(j, f);
    d2 += diff * diff;
  }
  return d2;
}

void require_sigma(const KernelSpec& spec) {
  if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma)) {
    throw ParameterError("kernel bandwidth sigma must be positive");
  }
}

}  // namespace

void Dataset::validate() const {
  if (features.rows() < 1 || features.cols() < 1) {
    throw ParameterError("dataset needs at least one sample and one feature");
  }
  if (!features.all_finite()) throw ParameterError("dataset features contain NaN or Inf");
  if (target && static_cast<Index>(target->size()) != features.rows()) {
    throw ParameterError("target length does not match sample count");
  }
}

Dataset load_csv(const std::filesystem::path& path, bool has_target) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());

  std::vector<double> values;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto cells = split_commas(body);

    std::vector<double> parsed(cells.size());
    bool numeric = true;
    for (std::size_t i = 0; i < cells.size() && numeric; ++i) numeric = parse_double(cells[i], parsed[i]);
    if (!numeric) {
      if (rows == 0 && width == 0) {
        width = cells.size();  // header
        continue;
      }
      throw ParseError("non-numeric cell in " + path.string(), line_no);
    }
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " columns, found " +
                           std::to_string(cells.size()),
                       line_no);
    }
    values.insert(values.end(), parsed.begin(), parsed.end());
    ++rows;
  }
  if (rows == 0) throw ParseError("no data rows in " + path.string(), line_no);

  const auto n = static_cast<Index>(rows);
  const auto w = static_cast<Index>(width);
  const Index d = has_target ? w - 1 : w;
  if (d < 1) throw ParseError("target column requested but file has a single column", 1);

  Dataset out;
  out.features = DenseMatrix(n, d);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < d; ++c) out.features(r, c) = values[static_cast<std::size_t>(r * w + c)];
  }
  if (has_target) {
    out.target.emplace(static_cast<std::size_t>(n));
    for (Index r = 0; r < n; ++r) {
      (*out.target)[static_cast<std::size_t>(r)] = values[static_cast<std::size_t>(r * w + d)];
    }
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Index r = 0; r < data.samples(); ++r) {
    for (Index c = 0; c < data.dimension(); ++c) {
      if (c > 0) out << ',';
      out << data.features(r, c);
    }
    if (data.target) out << ',' << (*data.target)[static_cast<std::size_t>(r)];
    out << '\n';
  }
}

FeatureScaling fit_standardization(const Dataset& data) {
  const Index n = data.samples();
  const Index d = data.dimension();
  FeatureScaling s{std::vector<double>(static_cast<std::size_t>(d), 0.0),
                   std::vector<double>(static_cast<std::size_t>(d), 1.0)};
  for (Index c = 0; c < d; ++c) {
    const auto col = data.features.eigen().col(c);
    const double mean = col.mean();
    const double var = (col.array() - mean).square().sum() / static_cast<double>(n);
    s.mean[static_cast<std::size_t>(c)] = mean;
    if (var > 0.0) s.scale[static_cast<std::size_t>(c)] = std::sqrt(var);
  }
  return s;
}

void apply_standardization(Dataset& data, const FeatureScaling& scaling) {
  if (static_cast<Index>(scaling.mean.size()) != data.dimension()) {
    throw DimensionError("standardization fitted on a different feature count");
  }
  for (Index c = 0; c < data.dimension(); ++c) {
    const auto uc = static_cast<std::size_t>(c);
    for (Index r = 0; r < data.samples(); ++r) {
      data.features(r, c) = (data.features(r, c) - scaling.mean[uc]) / scaling.scale[uc];
    }
  }
}

DenseMatrix rbf_gram(const Dataset& x, const KernelSpec& spec) {
  require_sigma(spec);
  const Index n = x.samples();
  const double inv = 1.0 / (2.0 * spec.sigma * spec.sigma);
  DenseMatrix k(n, n);
  for (Index j = 0; j < n; ++j) {
    k(j, j) = 1.0;
    for (Index i = j + 1; i < n; ++i) {
      const double v = std::exp(-squared_distance(x.features, i, x.features, j) * inv);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

DenseMatrix rbf_cross(const Dataset& rows, const Dataset& cols, const KernelSpec& spec) {
  require_sigma(spec);
  if (rows.dimension() != cols.dimension()) throw DimensionError("rbf_cross: feature counts differ");
  const double inv = 1.0 / (2.0 * spec.sigma * spec.sigma);
  DenseMatrix k(rows.samples(), cols.samples());
  for (Index j = 0; j < cols.samples(); ++j) {
    for (Index i = 0; i < rows.samples(); ++i) {
      k(i, j) = std::exp(-squared_distance(rows.features, i, cols.features, j) * inv);
    }
  }
  return k;
}

DenseMatrix kahan_gram(Index n, double c) {
  if (n < 1) throw ParameterError("kahan_gram: n must be positive");
  if (!(c > 0.0 && c < 1.0) || c * c > 0.9999) {
    throw ParameterError("kahan_gram: need 0 < c < 1 and c^2 <= 0.9999");
  }
  const double s = std::sqrt(0.9999 - c * c);
  DenseMatrix kahan(n, n);
  double row_scale = 1.0;
  for (Index i = 0; i < n; ++i) {
    kahan(i, i) = row_scale;
    for (Index j = i + 1; j < n; ++j) kahan(i, j) = -c * row_scale;
    row_scale *= s;
  }
  DenseMatrix a(n, n);
  a.eigen().noalias() = kahan.eigen().transpose() * kahan.eigen();
  // The product is symmetric in exact arithmetic; make it so in storage.
  copy_lower_to_upper(a);
  return a;
}

DenseMatrix random_spd(Index n, Index rank, double decay, RngStream& rng) {
  if (n < 1 || rank < 0 || rank > n) throw ParameterError("random_spd: need 0 <= rank <= n");
  if (!(decay > 0.0 && decay <= 1.0)) throw ParameterError("random_spd: decay must be in (0, 1]");
  DenseMatrix a(n, n);
  if (rank == 0) return a;

  const DenseMatrix g = gaussian_matrix(n, rank, rng);
  Eigen::HouseholderQR<EigenMatrix> qr(g.eigen());
  EigenMatrix q = qr.householderQ() * EigenMatrix::Identity(n, rank);
  // Sign convention from R's diagonal makes Q Haar distributed.
  const EigenMatrix& r = qr.matrixQR();
  for (Index j = 0; j < rank; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  Eigen::VectorXd lambda(rank);
  double v = 1.0;
  for (Index j = 0; j < rank; ++j) {
    lambda(j) = v;
    v *= decay;
  }
  const EigenMatrix scaled = q * lambda.cwiseSqrt().asDiagonal();
  a.eigen().noalias() = scaled * scaled.transpose();
  copy_lower_to_upper(a);
  return a;
}

Dataset gaussian_cloud(Index n, Index dim, RngStream& rng) {
  Dataset out;
  out.features = gaussian_matrix(n, dim, rng);
  return out;
}

}  // namespace srchol
