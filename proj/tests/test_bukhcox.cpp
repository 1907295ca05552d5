#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "projconst/bukhcox.hpp"
#include "projconst/etf.hpp"

using namespace projconst;

namespace {

const AuditLine& line(const std::vector<AuditLine>& lines, const std::string& name) {
  for (const auto& l : lines)
    if (l.name == name) return l;
  throw std::runtime_error("no line " + name);
}

}  // namespace

TEST(DropZero, NoZeroColumnsIsIdentity) {
  const auto f = normalize_to_parseval(simplex_etf(2));
  EXPECT_EQ(drop_zero_columns(f), f);
}

TEST(DropZero, PaddedEtf) {
  const auto f = normalize_to_parseval(simplex_etf(2));
  Matrix padded(2, 5);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) padded(i, j + 1) = f.matrix()(i, j);
  const FrameMatrix p(padded);
  const auto d = drop_zero_columns(p);
  EXPECT_EQ(d, f);
  EXPECT_GT(mu_objective(d), mu_objective(p));
  EXPECT_NEAR(mu_objective(p), 4.0 / 5.0, 1e-12);
}

TEST(DropZero, AllZero) {
  EXPECT_THROW(drop_zero_columns(FrameMatrix(Matrix(2, 4))), RankError);
}

TEST(Lifts, OrthonormalBasis) {
  const auto s = build_lift_system(FrameMatrix(Matrix::identity(3)));
  EXPECT_LT(max_abs_diff(s.G, Matrix::identity(3)), 1e-15);
}

TEST(Lifts, Etf23OffDiagonal) {
  const auto s = build_lift_system(normalize_to_parseval(simplex_etf(2)));
  EXPECT_NEAR(s.G(0, 1).real(), std::pow(2.0 / 3.0, -1.5) / 9.0, 1e-13);
  // Trace formula, computed here without the library.
  const Matrix& a = s.L[0];
  const Matrix& b = s.L[1];
  double t = 0.0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k) t += (a(i, k) * b(k, i)).real();
  EXPECT_NEAR(t, s.G(0, 1).real(), 1e-13);
}

TEST(Lifts, OneDimensional) {
  std::mt19937_64 rng(1);
  const FrameMatrix f(oracle::random_parseval(1, 5, Field::Real, rng));
  const auto s = build_lift_system(f);
  EXPECT_EQ(numerical_rank(s.G), 1u);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      EXPECT_NEAR(s.G(i, j).real(), std::sqrt(s.norms[i] * s.norms[j]), 1e-12);
}

TEST(Lifts, ZeroColumn) {
  Matrix u(2, 3);
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  EXPECT_THROW(build_lift_system(FrameMatrix(u)), ZeroColumnError);
}

TEST(Central, TightOnMaximalEtfs) {
  const auto a = audit_central_inequality(normalize_to_parseval(simplex_etf(2)), 0.5);
  EXPECT_TRUE(a.all_pass());
  EXPECT_NEAR(line(a.lines, "central").slack, 0.0, 1e-9);
  const auto b = audit_central_inequality(normalize_to_parseval(real_maximal_etf(3)), 1.0 / std::sqrt(5.0));
  EXPECT_TRUE(b.all_pass());
  EXPECT_NEAR(line(b.lines, "central").slack, 0.0, 1e-9);
  EXPECT_EQ(b.rank_g, 6u);
}

TEST(Central, RandomFrameStrict) {
  std::mt19937_64 rng(2);
  const FrameMatrix f(oracle::random_parseval(3, 7, Field::Real, rng));
  const auto a = audit_central_inequality(f, 1.0 / std::sqrt(5.0));
  EXPECT_TRUE(a.all_pass());
  EXPECT_GT(line(a.lines, "central").slack, 1e-6);
  EXPECT_LE(a.rank_g, 6u);
}

TEST(Central, OrthonormalPhiOne) {
  const auto a = audit_central_inequality(FrameMatrix(Matrix::identity(3)), 1.0);
  EXPECT_TRUE(a.all_pass());
  EXPECT_TRUE(a.phi_feasible);
}

TEST(Central, InfeasiblePhiFlagged) {
  const auto a = audit_central_inequality(normalize_to_parseval(simplex_etf(2)), 0.1);
  EXPECT_FALSE(a.phi_feasible);
  for (const auto& l : a.lines) EXPECT_NE(l.name, "central_in_N_m");
  EXPECT_TRUE(a.all_pass());
}

TEST(Central, PhiMustBePositive) {
  EXPECT_THROW(audit_central_inequality(FrameMatrix(Matrix::identity(2)), 0.0), DomainError);
}

TEST(Central, CauchySchwarzEqualityIffEqualNorms) {
  const auto etf = audit_central_inequality(normalize_to_parseval(real_maximal_etf(3)), 0.5);
  EXPECT_NEAR(line(etf.lines, "cauchy_schwarz_le_N").slack, 0.0, 1e-12);
  // [a I | b Q] with a^2 + b^2 = 1 is Parseval with two column norms.
  std::mt19937_64 rng(3);
  const Matrix q = orthonormalize_rows(gaussian_matrix(3, 3, Field::Real, rng));
  const double a = 0.6, b = 0.8;
  Matrix u(3, 6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      u(i, j) = i == j ? a : 0.0;
      u(i, j + 3) = b * q(i, j);
    }
  const auto skew = audit_central_inequality(FrameMatrix(u), 0.5);
  EXPECT_GT(line(skew.lines, "cauchy_schwarz_le_N").slack, 1e-6);
}

TEST(RankStructure, Examples) {
  std::mt19937_64 rng(4);
  const FrameMatrix f(oracle::random_parseval(2, 6, Field::Complex, rng));
  const auto g = audit_rank_structure(f, 1.0, 0.0);
  EXPECT_EQ(g.rank_a, g.rank_g);
  EXPECT_TRUE(g.all_pass());
  const auto o = audit_rank_structure(f, 0.0, 1.0);
  EXPECT_EQ(o.rank_a, 1u);
  EXPECT_TRUE(o.all_pass());
  const double phi = 0.5;
  const auto e = audit_rank_structure(normalize_to_parseval(simplex_etf(2)), 1.0, phi * phi / (1.0 + phi));
  EXPECT_LE(e.rank_a, 3u);
  EXPECT_TRUE(e.all_pass());
}

TEST(MuUpperBound, Values) {
  EXPECT_NEAR(mu_upper_bound(2, Field::Real).value, 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(mu_upper_bound(7, Field::Real).value, 2.5, 1e-14);
  EXPECT_NEAR(mu_upper_bound(4, Field::Complex).value, (1.0 + 3.0 * std::sqrt(5.0)) / 4.0, 1e-14);
  EXPECT_EQ(mu_upper_bound(1, Field::Real).value, 1.0);
  EXPECT_TRUE(mu_upper_bound(1, Field::Complex).trivial);
  EXPECT_NEAR(mu_upper_bound(3, Field::Real).phi, 1.0 / std::sqrt(5.0), 1e-15);
}

TEST(Audit, RandomFramesBothFields) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 30; ++rep) {
    const Field field = rep % 2 ? Field::Complex : Field::Real;
    const std::size_t m = 1 + rep % 4, n = m + rep % 7;
    const FrameMatrix f(oracle::random_parseval(m, n, field, rng));
    const auto a = audit_central_inequality(f, default_phi(m, field));
    EXPECT_TRUE(a.all_pass()) << m << "x" << n;
    EXPECT_LE(a.rank_g, cardinality_cap(m, field));
  }
}
