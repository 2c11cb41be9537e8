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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "srchol/linalg.hpp"

using namespace srchol;

namespace {

DenseMatrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  RngStream rng(seed);
  return gaussian_matrix(rows, cols, rng);
}

DenseMatrix random_spd_dense(Index n, std::uint64_t seed, double shift) {
  const DenseMatrix x = random_matrix(n, n, seed);
  DenseMatrix m = x.transpose() * x;
  for (Index i = 0; i < n; ++i) m(i, i) += shift;
  return m;
}

DenseMatrix random_lower(Index n, std::uint64_t seed) {
  DenseMatrix l = random_matrix(n, n, seed);
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < c; ++r) l(r, c) = 0.0;
    l(c, c) = 1.0 + std::abs(l(c, c));
  }
  return l;
}

double rel_fro(const DenseMatrix& a, const DenseMatrix& b) {
  return frobenius_norm(a - b) / frobenius_norm(b);
}

}  // namespace

TEST(DenseMatrix, RejectsNonFiniteData) {
  EXPECT_THROW(DenseMatrix::from_column_major(1, 2, {1.0, std::nan("")}), ParameterError);
  EXPECT_THROW(DenseMatrix::from_column_major(1, 2, {1.0, INFINITY}), ParameterError);
  EXPECT_THROW(DenseMatrix::from_column_major(2, 2, {1.0, 2.0, 3.0}), DimensionError);
  EXPECT_THROW(DenseMatrix(-1, 2), DimensionError);
}

TEST(DenseMatrix, SymmetricSwapMatchesPermutation) {
  DenseMatrix a = random_spd_dense(6, 3, 0.0);
  DenseMatrix b = a;
  b.swap_symmetric(1, 4);
  Permutation p(6);
  p.swap(1, 4);
  EXPECT_EQ(b, p.apply_symmetric(a));
}

TEST(Permutation, ComposeWithInverseIsIdentity) {
  Permutation p(std::vector<Index>{3, 0, 4, 1, 2});
  EXPECT_TRUE(p.is_valid());
  EXPECT_EQ(p.compose(p.inverse()).entries(), Permutation(5).entries());
  EXPECT_EQ(p.inverse().compose(p).entries(), Permutation(5).entries());
  EXPECT_THROW(Permutation(std::vector<Index>{0, 0, 1}), ParameterError);
}

TEST(Permutation, RotateToBackMovesFirstEntryToLast) {
  Permutation p(5);
  p.rotate_to_back(1, 3);
  EXPECT_EQ(p.entries(), (std::vector<Index>{0, 2, 3, 1, 4}));
}

TEST(GaussianMatrix, RejectsEmptyShape) {
  RngStream rng(1);
  EXPECT_THROW(gaussian_matrix(0, 3, rng), DimensionError);
}

TEST(GaussianMatrix, SameSeedIsBitIdentical) {
  EXPECT_EQ(random_matrix(7, 5, 42), random_matrix(7, 5, 42));
  EXPECT_NE(random_matrix(7, 5, 42), random_matrix(7, 5, 43));
}

TEST(GaussianMatrix, MomentsOfLargeSample) {
  const DenseMatrix x = random_matrix(10000, 1, 9);
  const auto v = x.values();
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double var = 0.0;
  for (double s : v) var += (s - mean) * (s - mean);
  var /= static_cast<double>(v.size() - 1);
  EXPECT_NEAR(mean, 0.0, 0.05);
  EXPECT_NEAR(var, 1.0, 0.1);
}

TEST(PartialQrcp, DominantColumnFirst) {
  const DenseMatrix m = DenseMatrix::from_rows({{10.0, 0.0}, {0.0, 1.0}});
  EXPECT_EQ(partial_qrcp(m, 1).pivots, (std::vector<Index>{0}));
}

TEST(PartialQrcp, TiesGoToLowestIndex) {
  const DenseMatrix m = DenseMatrix::from_rows({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
  EXPECT_EQ(partial_qrcp(m, 2).pivots, (std::vector<Index>{0, 1}));
}

TEST(PartialQrcp, MatchesBruteForceGreedy) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const DenseMatrix m = random_matrix(5, 8, 100 + seed);
    const auto got = partial_qrcp(m, 3).pivots;
    const auto want = oracle::greedy_qrcp(oracle::from(m), 3);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(static_cast<std::size_t>(got[i]), want[i]) << "seed " << seed;
    }
  }
}

TEST(PartialQrcp, RejectsTooManyPivots) {
  EXPECT_THROW(partial_qrcp(random_matrix(3, 8, 1), 4), DimensionError);
}

TEST(PartialQrcp, ReportsNumericalRank) {
  DenseMatrix m(4, 6);
  m(0, 2) = 3.0;
  m(1, 5) = 2.0;
  const auto qr = partial_qrcp(m, 3, 1e-12);
  EXPECT_EQ(qr.numerical_rank, 2);
  EXPECT_EQ(qr.pivots[0], 2);
  EXPECT_EQ(qr.pivots[1], 5);
}

TEST(CholUnblocked, Identity) {
  EXPECT_EQ(chol_unblocked(DenseMatrix::identity(3)), DenseMatrix::identity(3));
}

TEST(CholUnblocked, HandChecked2x2) {
  const DenseMatrix c = chol_unblocked(DenseMatrix::from_rows({{4, 2}, {2, 5}}));
  EXPECT_EQ(c, DenseMatrix::from_rows({{2, 0}, {1, 2}}));
}

TEST(CholUnblocked, ResidualOnRandomSpd) {
  const DenseMatrix m = random_spd_dense(8, 5, 1e-3);
  const DenseMatrix c = chol_unblocked(m);
  EXPECT_LE(frobenius_norm(gram_outer(c) - m), 1e-12 * frobenius_norm(m));
  for (Index col = 1; col < 8; ++col) {
    for (Index r = 0; r < col; ++r) EXPECT_EQ(c(r, col), 0.0);
  }
}

TEST(CholUnblocked, RejectsIndefinite) {
  try {
    chol_unblocked(DenseMatrix::from_rows({{1, 2}, {2, 1}}));
    FAIL() << "expected NotPositiveDefinite";
  } catch (const NotPositiveDefinite& e) {
    EXPECT_EQ(e.index(), 1);
  }
}

TEST(TriSolveRight, IdentityAndScaling) {
  const DenseMatrix x = random_matrix(4, 3, 11);
  EXPECT_EQ(tri_solve_right(x, DenseMatrix::identity(3)), x);
  DenseMatrix two = DenseMatrix::identity(3);
  for (Index i = 0; i < 3; ++i) two(i, i) = 2.0;
  const DenseMatrix half = tri_solve_right(x, two);
  for (Index r = 0; r < 4; ++r) {
    for (Index c = 0; c < 3; ++c) EXPECT_DOUBLE_EQ(half(r, c), x(r, c) / 2.0);
  }
}

TEST(TriSolveRight, ResidualOnRandomInput) {
  const DenseMatrix x = random_matrix(9, 6, 12);
  const DenseMatrix c = random_lower(6, 13);
  const DenseMatrix y = tri_solve_right(x, c);
  EXPECT_LE(frobenius_norm(y * c.transpose() - x), 1e-12 * frobenius_norm(x));
}

TEST(TriSolveRight, SingularDiagonal) {
  DenseMatrix c = DenseMatrix::identity(3);
  c(1, 1) = 0.0;
  EXPECT_THROW(tri_solve_right(random_matrix(2, 3, 1), c), SingularTriangular);
}

TEST(GivensRestore, TriangularInputUnchanged) {
  const DenseMatrix l = random_lower(5, 21);
  EXPECT_EQ(givens_restore(l), l);
}

TEST(GivensRestore, SwappedRows2x2) {
  DenseMatrix l = DenseMatrix::from_rows({{2.0, 0.0}, {1.0, 3.0}});
  DenseMatrix shifted = l;
  shifted.swap_rows(0, 1);
  const DenseMatrix r = givens_restore(shifted);
  EXPECT_EQ(r(0, 1), 0.0);
  EXPECT_GE(r(0, 0), 0.0);
  EXPECT_GE(r(1, 1), 0.0);
  EXPECT_LE(rel_fro(gram_outer(r), gram_outer(shifted)), 1e-14);
}

TEST(GivensRestore, RandomCycledRows) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    // 6 x 6 triangle on top of 4 extra rows, rows 1..5 cycled.
    DenseMatrix l(10, 6);
    const DenseMatrix tri = random_lower(6, 200 + seed);
    const DenseMatrix below = random_matrix(4, 6, 300 + seed);
    l.eigen().topRows(6) = tri.eigen();
    l.eigen().bottomRows(4) = below.eigen();
    DenseMatrix shifted = l;
    for (Index c = 0; c < 6; ++c) {
      auto col = shifted.column(c);
      std::rotate(col.begin() + 1, col.begin() + 2, col.begin() + 6);
    }
    const DenseMatrix before = gram_outer(shifted);
    const DenseMatrix r = givens_restore(shifted, 1);
    EXPECT_LE(rel_fro(gram_outer(r), before), 1e-12);
    for (Index c = 0; c < 6; ++c) {
      for (Index row = 0; row < c; ++row) EXPECT_EQ(r(row, c), 0.0);
      EXPECT_GE(r(c, c), 0.0);
    }
  }
}

TEST(Norm21, SimpleCases) {
  EXPECT_EQ(norm_2_1(DenseMatrix::identity(4)), 1.0);
  DenseMatrix x(2, 3);
  x(0, 1) = 3.0;
  x(1, 1) = 4.0;
  EXPECT_DOUBLE_EQ(norm_2_1(x), 5.0);
}

TEST(Norm21, MatchesBruteForce) {
  const DenseMatrix x = random_matrix(7, 9, 31);
  double best = 0.0;
  for (Index c = 0; c < 9; ++c) {
    double s = 0.0;
    for (Index r = 0; r < 7; ++r) s += x(r, c) * x(r, c);
    best = std::max(best, std::sqrt(s));
  }
  EXPECT_NEAR(norm_2_1(x), best, 1e-14 * best);
}

TEST(SymEigvals, DiagonalAndIdentity) {
  const std::vector<double> d{3.0, 1.0, 2.0};
  EXPECT_EQ(sym_eigvals(DenseMatrix::diagonal(d)), (std::vector<double>{3.0, 2.0, 1.0}));
  for (double v : sym_eigvals(DenseMatrix::identity(6))) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(SymEigvals, MatchesJacobiOracle) {
  const DenseMatrix a = random_spd_dense(20, 41, 0.1);
  const auto got = sym_eigvals(a);
  const auto want = oracle::jacobi_eigvals(oracle::from(a));
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-9 * want[i]);
  EXPECT_TRUE(std::is_sorted(got.begin(), got.end(), std::greater<>()));
  const double sum = std::accumulate(got.begin(), got.end(), 0.0);
  EXPECT_NEAR(sum, trace(a), 1e-10 * trace(a));
}

TEST(SymEigvals, RejectsAsymmetric) {
  EXPECT_THROW(sym_eigvals(DenseMatrix::from_rows({{1, 2}, {0, 1}})), SymmetryError);
}

TEST(SvdTruncate, FullRankKeepsProduct) {
  const DenseMatrix l = random_matrix(12, 5, 51);
  EXPECT_LE(rel_fro(gram_outer(svd_truncate(l, 5)), gram_outer(l)), 1e-12);
}

TEST(SvdTruncate, OrthogonalColumns) {
  DenseMatrix l(4, 3);
  l(0, 0) = 3.0;
  l(1, 1) = 2.0;
  l(2, 2) = 1.0;
  const DenseMatrix l2 = svd_truncate(l, 2);
  const auto e = sym_eigvals(gram_outer(l) - gram_outer(l2));
  EXPECT_NEAR(std::max(std::abs(e.front()), std::abs(e.back())), 1.0, 1e-14);
}

TEST(SvdTruncate, ErrorIsNextSingularValueSquared) {
  const DenseMatrix l = random_matrix(30, 8, 52);
  const DenseMatrix l4 = svd_truncate(l, 4);
  const auto e = sym_eigvals(gram_outer(l) - gram_outer(l4), 1e-9);
  const double err = std::max(std::abs(e.front()), std::abs(e.back()));
  const auto s2 = oracle::squared_singular_values(oracle::from(l));
  EXPECT_NEAR(err, s2[4], 1e-10 * s2[0]);
  EXPECT_THROW(svd_truncate(l, 9), DimensionError);
}
