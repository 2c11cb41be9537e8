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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracle {

Mat from(const srchol::DenseMatrix& m) {
  Mat out(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (srchol::Index r = 0; r < m.rows(); ++r) {
    for (srchol::Index c = 0; c < m.cols(); ++c) {
      out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c);
    }
  }
  return out;
}

srchol::DenseMatrix to(const Mat& m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  srchol::DenseMatrix out(static_cast<srchol::Index>(rows), static_cast<srchol::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out(static_cast<srchol::Index>(r), static_cast<srchol::Index>(c)) = m[r][c];
    }
  }
  return out;
}

Mat multiply(const Mat& a, const Mat& b) {
  const std::size_t n = a.size(), m = b.size(), p = m == 0 ? 0 : b[0].size();
  Mat out(n, std::vector<double>(p, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < m; ++t) {
      for (std::size_t j = 0; j < p; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  }
  return out;
}

Mat transpose(const Mat& a) {
  const std::size_t n = a.size(), m = n == 0 ? 0 : a[0].size();
  Mat out(m, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) out[j][i] = a[i][j];
  }
  return out;
}

Mat outer(const Mat& l) { return multiply(l, transpose(l)); }

std::vector<double> jacobi_eigvals(Mat a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        total += a[i][j] * a[i][j];
        if (i != j) off += a[i][j] * a[i][j];
      }
    }
    if (off <= 1e-30 * total || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i][i];
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> squared_singular_values(const Mat& l) {
  return jacobi_eigvals(multiply(transpose(l), l));
}

std::vector<std::size_t> greedy_qrcp(Mat m, std::size_t nb) {
  const std::size_t rows = m.size(), cols = rows == 0 ? 0 : m[0].size();
  std::vector<std::size_t> pivots;
  std::vector<bool> used(cols, false);
  for (std::size_t step = 0; step < nb; ++step) {
    std::size_t best = cols;
    double best_norm = -1.0;
    for (std::size_t c = 0; c < cols; ++c) {
      if (used[c]) continue;
      double s = 0.0;
      for (std::size_t r = 0; r < rows; ++r) s += m[r][c] * m[r][c];
      if (s > best_norm) {
        best_norm = s;
        best = c;
      }
    }
    pivots.push_back(best);
    used[best] = true;
    const double norm = std::sqrt(best_norm);
    if (norm == 0.0) continue;
    std::vector<double> q(rows);
    for (std::size_t r = 0; r < rows; ++r) q[r] = m[r][best] / norm;
    for (std::size_t c = 0; c < cols; ++c) {
      double dot = 0.0;
      for (std::size_t r = 0; r < rows; ++r) dot += q[r] * m[r][c];
      for (std::size_t r = 0; r < rows; ++r) m[r][c] -= dot * q[r];
    }
  }
  return pivots;
}

DiagPivoted diag_pivoted(Mat a, std::size_t k) {
  const std::size_t n = a.size();
  DiagPivoted out;
  out.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.perm[i] = i;
  out.l.assign(n, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t p = j;
    for (std::size_t i = j + 1; i < n; ++i) {
      if (a[i][i] > a[p][p]) p = i;
    }
    std::swap(a[j], a[p]);
    for (auto& row : a) std::swap(row[j], row[p]);
    std::swap(out.l[j], out.l[p]);
    std::swap(out.perm[j], out.perm[p]);
    const double d = std::sqrt(a[j][j]);
    for (std::size_t i = j; i < n; ++i) out.l[i][j] = a[i][j] / d;
    for (std::size_t r = j; r < n; ++r) {
      for (std::size_t c = j; c < n; ++c) a[r][c] -= out.l[r][j] * out.l[c][j];
    }
  }
  return out;
}

Mat schur_complement(const Mat& a, std::size_t k) {
  const std::size_t n = a.size();
  Mat a11(k, std::vector<double>(k)), a21(n - k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) a11[i][j] = a[i][j];
  }
  for (std::size_t i = k; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) a21[i - k][j] = a[i][j];
  }
  // X = A21 A11^{-1} by Gauss-Jordan on A11^T X^T = A21^T.
  Mat aug = a11;
  Mat rhs = transpose(a21);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::abs(aug[r][c]) > std::abs(aug[p][c])) p = r;
    }
    std::swap(aug[c], aug[p]);
    std::swap(rhs[c], rhs[p]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const double f = aug[r][c] / aug[c][c];
      for (std::size_t t = 0; t < k; ++t) aug[r][t] -= f * aug[c][t];
      for (std::size_t t = 0; t < n - k; ++t) rhs[r][t] -= f * rhs[c][t];
    }
  }
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t t = 0; t < n - k; ++t) rhs[r][t] /= aug[r][r];
  }
  // rhs = A11^{-1} A12, so S = A22 - A21 rhs.
  Mat s(n - k, std::vector<double>(n - k));
  for (std::size_t i = 0; i < n - k; ++i) {
    for (std::size_t j = 0; j < n - k; ++j) {
      double v = a[i + k][j + k];
      for (std::size_t t = 0; t < k; ++t) v -= a21[i][t] * rhs[t][j];
      s[i][j] = v;
    }
  }
  return s;
}

Mat lower_inverse(const Mat& l) {
  const std::size_t n = l.size();
  Mat inv(n, std::vector<double>(n, 0.0));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = c; r < n; ++r) {
      double v = r == c ? 1.0 : 0.0;
      for (std::size_t t = c; t < r; ++t) v -= l[r][t] * inv[t][c];
      inv[r][c] = v / l[r][r];
    }
  }
  return inv;
}

std::vector<double> conjugate_gradient(const Mat& a, const std::vector<double>& b, double rel_tol,
                                       std::size_t max_iter) {
  const std::size_t n = b.size();
  std::vector<double> x(n, 0.0), r = b, p = b, ap(n);
  auto dot = [](const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
  };
  const double b_norm = std::sqrt(dot(b, b));
  double rr = dot(r, r);
  for (std::size_t it = 0; it < max_iter && std::sqrt(rr) > rel_tol * b_norm; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a[i][j] * p[j];
      ap[i] = s;
    }
    const double step = rr / dot(p, ap);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += step * p[i];
      r[i] -= step * ap[i];
    }
    const double rr_new = dot(r, r);
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + (rr_new / rr) * p[i];
    rr = rr_new;
  }
  return x;
}

double determinant_lower(const Mat& l) {
  double d = 1.0;
  for (std::size_t i = 0; i < l.size(); ++i) d *= l[i][i];
  return d;
}

}  // namespace oracle
