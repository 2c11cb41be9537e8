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

#include <cmath>

#include "oracles.hpp"
#include "srchol/kernels.hpp"
#include "srchol/linalg.hpp"
#include "srchol/pivoted_cholesky.hpp"

using namespace srchol;

namespace {

DenseMatrix spd(Index n, std::uint64_t seed, double decay = 0.8) {
  RngStream rng(seed);
  return random_spd(n, n, decay, rng);
}

// Max |.| over the leading rank rows of P^T A P - L L^T.
double leading_residual(const DenseMatrix& a, const Permutation& perm, const DenseMatrix& l) {
  DenseMatrix r = perm.apply_symmetric(a) - gram_outer(l);
  return max_abs(r.block(0, 0, l.cols(), a.cols()));
}

}  // namespace

TEST(LeftLookingCholesky, IdentityAnyBlock) {
  for (Index b : {1, 3, 5}) EXPECT_EQ(left_looking_cholesky(DenseMatrix::identity(5), b), DenseMatrix::identity(5));
}

TEST(LeftLookingCholesky, BlockSizesAgreeWithUnblocked) {
  const DenseMatrix a = spd(50, 7, 0.9);
  const DenseMatrix ref = chol_unblocked(a);
  for (Index b : {1, 7, 50}) {
    const DenseMatrix l = left_looking_cholesky(a, b);
    EXPECT_LE(max_abs(l - ref), 1e-12) << "block " << b;
    EXPECT_LE(frobenius_norm(gram_outer(l) - a), 1e-12 * frobenius_norm(a));
  }
}

TEST(LeftLookingCholesky, ReportsGlobalColumn) {
  DenseMatrix a = DenseMatrix::identity(6);
  a(4, 4) = -1.0;
  try {
    left_looking_cholesky(a, 2);
    FAIL();
  } catch (const NotPositiveDefinite& e) {
    EXPECT_EQ(e.index(), 4);
  }
  EXPECT_THROW(left_looking_cholesky(a, 0), ParameterError);
}

TEST(DiagPivotedCholesky, DiagonalMatrix) {
  const DenseMatrix a = DenseMatrix::diagonal(std::vector<double>{3.0, 1.0, 2.0});
  const auto r = diag_pivoted_cholesky(a, 2);
  EXPECT_EQ(r.perm[0], 0);
  EXPECT_EQ(r.perm[1], 2);
  EXPECT_DOUBLE_EQ(r.L(0, 0), std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(r.L(1, 1), std::sqrt(2.0));
  EXPECT_EQ(r.L(2, 0), 0.0);
  EXPECT_EQ(r.L(2, 1), 0.0);
  ASSERT_EQ(r.schur_diag.size(), 1u);
  EXPECT_DOUBLE_EQ(r.schur_diag[0], 1.0);
}

TEST(DiagPivotedCholesky, IdentityFullRank) {
  const auto r = diag_pivoted_cholesky(DenseMatrix::identity(7), 7);
  EXPECT_EQ(r.perm.entries(), Permutation(7).entries());
  EXPECT_EQ(r.L, DenseMatrix::identity(7));
}

TEST(DiagPivotedCholesky, MatchesSinglePivotOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DenseMatrix a = spd(12, 40 + seed);
    for (Index block : {1, 2, 64}) {
      const auto r = diag_pivoted_cholesky(a, 5, block);
      const auto want = oracle::diag_pivoted(oracle::from(a), 5);
      for (Index i = 0; i < 12; ++i) EXPECT_EQ(static_cast<std::size_t>(r.perm[i]), want.perm[static_cast<std::size_t>(i)]);
      EXPECT_LE(max_abs(r.L - oracle::to(want.l)), 1e-12);
    }
  }
}

TEST(DiagPivotedCholesky, EarlyStopOnLowRank) {
  RngStream rng(1);
  const DenseMatrix a = random_spd(20, 4, 0.5, rng);
  const auto r = diag_pivoted_cholesky(a, 10, 3);
  EXPECT_TRUE(r.early_stop);
  EXPECT_EQ(r.rank, 4);
  EXPECT_EQ(r.L.cols(), 4);
  for (double s : r.schur_diag) EXPECT_LE(std::abs(s), 1e-10);
}

TEST(RandomizedCholesky, DominantDiagonalOrder) {
  const DenseMatrix a = DenseMatrix::diagonal(std::vector<double>{10.0, 1.0, 0.1, 0.01});
  int agree = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RngStream rng(seed);
    const auto r = randomized_blocked_cholesky(a, RandomizedOptions{1, 2, 2}, rng).result();
    if (r.perm[0] == 0 && r.perm[1] == 1) ++agree;
  }
  EXPECT_GE(agree, 99);
}

TEST(RandomizedCholesky, IdentityReconstruction) {
  const DenseMatrix a = DenseMatrix::identity(10);
  RngStream rng(3);
  const auto r = randomized_blocked_cholesky(a, RandomizedOptions{3, 4, 6}, rng).result();
  EXPECT_LE(leading_residual(a, r.perm, r.L), 1e-12);
}

TEST(RandomizedCholesky, ProjectionMatchesExplicitSchurComplement) {
  const DenseMatrix a = spd(40, 11, 0.85);
  RngStream rng(12);
  int rounds = 0;
  auto check = [&](const PartialCholeskyState& st, const ProjectionState& proj, Index j, Index nb) {
    const Index done = j + nb;
    if (done >= 12) return;  // no update after the last round
    ++rounds;
    const auto s = oracle::schur_complement(oracle::from(st.permuted()), static_cast<std::size_t>(done));
    const DenseMatrix omega2 = proj.omega.block(0, done, proj.omega.rows(), 40 - done);
    const DenseMatrix want = omega2 * oracle::to(s);
    const DenseMatrix got = proj.sketch.block(0, done, proj.sketch.rows(), 40 - done);
    EXPECT_LE(frobenius_norm(got - want), 1e-8 * frobenius_norm(want)) << "round at " << j;
  };
  randomized_blocked_cholesky(a, RandomizedOptions{4, 6, 12}, rng, check);
  EXPECT_EQ(rounds, 2);
}

TEST(RandomizedCholesky, ParameterChecks) {
  const DenseMatrix a = DenseMatrix::identity(5);
  RngStream rng(1);
  EXPECT_THROW(randomized_blocked_cholesky(a, RandomizedOptions{4, 3, 2}, rng), ParameterError);
  EXPECT_THROW(randomized_blocked_cholesky(a, RandomizedOptions{2, 3, 6}, rng), ParameterError);
}

TEST(RandomizedCholesky, Deterministic) {
  const DenseMatrix a = spd(30, 2);
  RngStream r1(77), r2(77);
  const auto x = randomized_blocked_cholesky(a, RandomizedOptions{4, 7, 10}, r1).result();
  const auto y = randomized_blocked_cholesky(a, RandomizedOptions{4, 7, 10}, r2).result();
  EXPECT_EQ(x.perm.entries(), y.perm.entries());
  EXPECT_EQ(x.L, y.L);
}

TEST(RandomizedCholesky, EarlyStopOnLowRank) {
  RngStream g(5);
  const DenseMatrix a = random_spd(30, 7, 0.5, g);
  RngStream rng(6);
  const auto r = randomized_blocked_cholesky(a, RandomizedOptions{4, 6, 12}, rng).result();
  EXPECT_TRUE(r.early_stop);
  EXPECT_EQ(r.rank, 7);
  EXPECT_LE(leading_residual(a, r.perm, r.L), 1e-10);
}

TEST(UpdateProjection, HandComputedTwoByTwo) {
  const DenseMatrix a = DenseMatrix::from_rows({{4, 2}, {2, 3}});
  PartialCholeskyState st;
  st.matrix = &a;
  st.perm = Permutation(2);
  st.factor = DenseMatrix::from_rows({{2.0}, {1.0}});
  st.rank = 1;
  ProjectionState proj;
  proj.omega = DenseMatrix::from_rows({{0.5, -1.5}});
  proj.sketch = proj.omega * a;
  update_projection(proj, st, 0, 1);
  // Schur complement 3 - 2^2/4 = 2.
  EXPECT_DOUBLE_EQ(proj.sketch(0, 1), 2.0 * -1.5);
  EXPECT_DOUBLE_EQ(proj.sketch(0, 0), 0.5 * 4 + -1.5 * 2);
}

TEST(UpdateProjection, SingleRoundLeavesSketch) {
  const DenseMatrix a = spd(10, 4);
  RngStream rng(2);
  const auto rc = randomized_blocked_cholesky(a, RandomizedOptions{5, 6, 5}, rng);
  const DenseMatrix fresh = rc.projection.omega * rc.state.permuted();
  EXPECT_LE(max_abs(rc.projection.sketch - fresh), 1e-12);
}

TEST(SchurDiagonal, RankZeroIsDiagonal) {
  const DenseMatrix a = spd(6, 9);
  PartialCholeskyState st;
  st.matrix = &a;
  st.perm = Permutation(6);
  st.factor = DenseMatrix(6, 0);
  EXPECT_EQ(schur_diagonal(st), a.diagonal_values());
}

TEST(SchurDiagonal, MatchesExplicitSchurComplement) {
  const DenseMatrix a = spd(15, 10);
  RngStream rng(3);
  const auto rc = randomized_blocked_cholesky(a, RandomizedOptions{2, 4, 6}, rng);
  const auto s = oracle::schur_complement(oracle::from(rc.state.permuted()), 6);
  const auto d = schur_diagonal(rc.state);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(d[i], s[i][i], 1e-12 * std::abs(s[i][i]) + 1e-15);
}

TEST(SchurDiagonal, ExactRankRecovered) {
  RngStream g(4);
  const DenseMatrix a = random_spd(20, 5, 0.5, g);
  RngStream rng(5);
  const auto r = randomized_blocked_cholesky(a, RandomizedOptions{5, 7, 5}, rng).result();
  for (double s : r.schur_diag) EXPECT_LE(std::abs(s), 1e-10 * max_abs(a));
}
