#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "projconst/etf.hpp"
#include "projconst/frames.hpp"

using namespace projconst;

TEST(Frames, ShapeChecks) {
  EXPECT_THROW(FrameMatrix(Matrix(3, 2)), ShapeError);
  EXPECT_THROW(FrameMatrix(Matrix(0, 2)), ShapeError);
  EXPECT_NO_THROW(FrameMatrix(Matrix(2, 2)));
}

TEST(Frames, GramMatchesOracle) {
  std::mt19937_64 rng(1);
  for (Field f : {Field::Real, Field::Complex}) {
    const FrameMatrix u(gaussian_matrix(3, 6, f, rng));
    EXPECT_LT(max_abs_diff(gram(u), oracle::gram(u.matrix())), 1e-13);
  }
}

TEST(Frames, TightnessAndParseval) {
  std::mt19937_64 rng(4);
  const FrameMatrix p(oracle::random_parseval(3, 7, Field::Complex, rng));
  EXPECT_TRUE(is_parseval(p));
  FrameMatrix scaled(p.matrix() * 2.0);
  const auto tc = is_tight(scaled);
  EXPECT_TRUE(tc.tight);
  EXPECT_FALSE(is_parseval(scaled));
  EXPECT_LT(max_abs_diff(normalize_to_parseval(scaled).matrix(), p.matrix()), 1e-14);
  const FrameMatrix g(gaussian_matrix(3, 7, Field::Real, rng));
  EXPECT_FALSE(is_tight(g).tight);
  EXPECT_THROW(normalize_to_parseval(g), NotTightError);
}

TEST(Frames, UnitColumns) {
  const FrameMatrix f(Matrix::from_rows({{3.0, 0.0}, {4.0, 2.0}}));
  const auto u = unit_columns(f);
  EXPECT_NEAR(u.column_norm(0), 1.0, 1e-15);
  EXPECT_NEAR(u.matrix()(0, 0).real(), 0.6, 1e-15);
  EXPECT_THROW(unit_columns(FrameMatrix(Matrix::from_rows({{1.0, 0.0}}))), ZeroColumnError);
}

TEST(Frames, WelchAngle) {
  EXPECT_DOUBLE_EQ(welch_angle(2, 3), 0.5);
  EXPECT_NEAR(welch_angle(3, 6), 1.0 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(welch_angle(7, 28), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(welch_angle(23, 276), 0.2, 1e-15);
  EXPECT_NEAR(welch_angle(2, 4), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_THROW(welch_angle(3, 3), DomainError);
  EXPECT_THROW(welch_angle(3, 2), DomainError);
}

TEST(Frames, CardinalityCap) {
  EXPECT_EQ(cardinality_cap(2, Field::Real), 3u);
  EXPECT_EQ(cardinality_cap(23, Field::Real), 276u);
  EXPECT_EQ(cardinality_cap(3, Field::Complex), 9u);
  EXPECT_EQ(cardinality_cap(1, Field::Real), 1u);
  EXPECT_THROW(cardinality_cap(0, Field::Real), DomainError);
}

TEST(Frames, CoherenceProfile) {
  const auto p = coherence_profile(simplex_etf(2));
  EXPECT_NEAR(p.offdiag_max, 0.5, 1e-14);
  EXPECT_NEAR(p.offdiag_spread, 0.0, 1e-14);
  EXPECT_DOUBLE_EQ(p.welch_value, 0.5);
  EXPECT_EQ(coherence_profile(FrameMatrix(Matrix::identity(3))).welch_value, 0.0);
}

TEST(Frames, CertifyEtf) {
  EXPECT_TRUE(certify_etf(simplex_etf(2)));
  EXPECT_TRUE(certify_etf(unit_columns(simplex_etf(4))));

  const auto basis = certify_etf_report(FrameMatrix(Matrix::identity(3)));
  EXPECT_FALSE(basis.ok);
  EXPECT_TRUE(certify_etf_report(FrameMatrix(Matrix::identity(3)), 1e-9, true).ok);

  std::mt19937_64 rng(2);
  const auto rnd = certify_etf_report(FrameMatrix(oracle::random_parseval(3, 6, Field::Real, rng)));
  EXPECT_FALSE(rnd.ok);
  EXPECT_FALSE(rnd.reasons.empty());
}

TEST(Frames, CertifyRejectsEquiangularNonTight) {
  // Three unit vectors in R^3 at pairwise inner product 1/2.
  const double s = std::sqrt(3.0) / 2.0;
  const double z = std::sqrt(1.0 - 0.25 - (0.5 - 0.25) * (0.5 - 0.25) / (s * s));
  const FrameMatrix lines(
      Matrix::from_rows({{1.0, 0.5, 0.5}, {0.0, s, (0.5 - 0.25) / s}, {0.0, 0.0, z}}));
  EXPECT_NEAR(coherence_profile(lines).offdiag_spread, 0.0, 1e-14);
  const auto c = certify_etf_report(lines);
  EXPECT_FALSE(c.ok);
  EXPECT_FALSE(c.tightness.tight);
}

TEST(Frames, CertifyRejectsUnequalNorms) {
  Matrix u = simplex_etf(2).matrix();
  for (std::size_t i = 0; i < 2; ++i) u(i, 0) *= 2.0;
  const auto c = certify_etf_report(FrameMatrix(u));
  EXPECT_FALSE(c.ok);
}
