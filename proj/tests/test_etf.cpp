#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "projconst/etf.hpp"
#include "projconst/io.hpp"

using namespace projconst;

TEST(Simplex, CertifiesAndIsParseval) {
  for (std::size_t m : {2, 3, 5, 8}) {
    const auto f = simplex_etf(m);
    EXPECT_EQ(f.N(), m + 1);
    EXPECT_TRUE(is_parseval(f));
    EXPECT_TRUE(certify_etf(f)) << m;
    EXPECT_NEAR(coherence_profile(f).offdiag_max, 1.0 / static_cast<double>(m), 1e-13);
  }
  const auto c = simplex_etf(3, Field::Complex);
  EXPECT_EQ(c.field(), Field::Complex);
  EXPECT_TRUE(certify_etf(c));
  EXPECT_THROW(simplex_etf(0), DomainError);
}

TEST(Simplex, OneDimensionalExceedsCap) {
  // Two antipodal points on the line: equiangular and tight, but N = 2 > 1.
  const auto f = simplex_etf(1);
  EXPECT_EQ(f.N(), 2u);
  EXPECT_TRUE(is_parseval(f));
  const auto c = certify_etf_report(f);
  EXPECT_FALSE(c.ok);
  ASSERT_EQ(c.reasons.size(), 1u);
  EXPECT_EQ(c.reasons.front(), "N exceeds the cardinality cap");
}

TEST(RealMaximal, KnownDimensions) {
  for (std::size_t m : {2, 3, 7}) {
    const auto f = real_maximal_etf(m);
    EXPECT_EQ(f.N(), m * (m + 1) / 2);
    EXPECT_TRUE(certify_etf(f));
    EXPECT_NEAR(coherence_profile(f).offdiag_max, 1.0 / std::sqrt(m + 2.0), 1e-13);
  }
  EXPECT_THROW(real_maximal_etf(4), UnsupportedError);
  EXPECT_THROW(real_maximal_etf(23), UnsupportedError);
}

TEST(Seidel, Validation) {
  EXPECT_THROW(SeidelMatrix(Matrix::from_rows({{0.0, 1.0}, {-1.0, 0.0}})), DomainError);
  EXPECT_THROW(SeidelMatrix(Matrix::from_rows({{1.0, 1.0}, {1.0, 0.0}})), DomainError);
  EXPECT_THROW(SeidelMatrix(Matrix::from_rows({{0.0, 0.5}, {0.5, 0.0}})), DomainError);
  EXPECT_THROW(SeidelMatrix(Matrix(2, 3)), ShapeError);
}

TEST(Seidel, TriangleRecoversEtf23) {
  const SeidelMatrix s(Matrix::from_rows({{0.0, -1.0, -1.0}, {-1.0, 0.0, -1.0}, {-1.0, -1.0, 0.0}}));
  const auto f = seidel_to_etf(s);
  EXPECT_EQ(f.m(), 2u);
  EXPECT_EQ(f.N(), 3u);
  EXPECT_TRUE(certify_etf(f));
}

TEST(Seidel, AllPlusIsRejected) {
  // Spectrum {-1,-1,2}: three lines in R^1, over the cap.
  const SeidelMatrix s(Matrix::from_rows({{0.0, 1.0, 1.0}, {1.0, 0.0, 1.0}, {1.0, 1.0, 0.0}}));
  EXPECT_THROW(seidel_to_etf(s), NotTwoGraphError);
}

TEST(Seidel, ThreeEigenvaluesRejected) {
  const SeidelMatrix s(Matrix::from_rows(
      {{0.0, 1.0, 1.0, 1.0}, {1.0, 0.0, -1.0, 1.0}, {1.0, -1.0, 0.0, 1.0}, {1.0, 1.0, 1.0, 0.0}}));
  EXPECT_THROW(seidel_to_etf(s), NotTwoGraphError);
}

TEST(Seidel, RoundTripThroughFrames) {
  for (std::size_t m : {2, 3, 7}) {
    const auto f = real_maximal_etf(m);
    const auto g = seidel_to_etf(seidel_from_frame(f));
    EXPECT_EQ(g.m(), m);
    EXPECT_EQ(g.N(), f.N());
    EXPECT_TRUE(certify_etf(g));
    // Same Gram matrix up to switching: compare |G|.
    EXPECT_LT(max_abs_diff(oracle::abs_gram(f.matrix()), oracle::abs_gram(g.matrix())), 1e-10);
  }
  EXPECT_THROW(seidel_from_frame(FrameMatrix(Matrix::identity(2))), DomainError);
  EXPECT_THROW(seidel_from_frame(simplex_etf(2, Field::Complex)), FieldError);
}

TEST(Seidel, TwoGraph276FromDataFile) {
  std::filesystem::path p = PROJCONST_DEFAULT_DATA;
  if (const char* env = std::getenv("PROJCONST_DATA"); env && *env) p = env;
  if (std::filesystem::is_directory(p)) p /= "seidel_276.txt";
  if (!std::filesystem::is_regular_file(p)) GTEST_SKIP() << "seidel_276.txt not available";
  const auto f = seidel_to_etf(io::read_seidel_file(p.string()));
  EXPECT_EQ(f.m(), 23u);
  EXPECT_EQ(f.N(), 276u);
  EXPECT_NEAR(coherence_profile(f).offdiag_max, 0.2, 1e-10);
}

TEST(Sic, ExactSmallDimensions) {
  for (std::size_t d : {2, 3}) {
    const auto fid = sic_fiducial(d);
    EXPECT_FALSE(fid.exhausted);
    EXPECT_LT(fid.achieved_spread, 1e-12);
    const auto f = weyl_heisenberg_orbit(fid.v);
    EXPECT_EQ(f.N(), d * d);
    EXPECT_TRUE(is_parseval(f, 1e-12));
    EXPECT_TRUE(certify_etf(f, 1e-10));
    EXPECT_NEAR(coherence_profile(f).offdiag_max, 1.0 / std::sqrt(d + 1.0), 1e-12);
  }
}

TEST(Sic, NumericalSearch) {
  for (std::size_t d = 4; d <= 8; ++d) {
    const auto fid = sic_fiducial(d);
    EXPECT_LT(fid.achieved_spread, 1e-8) << d;
    EXPECT_TRUE(certify_etf(weyl_heisenberg_orbit(fid.v), 1e-8)) << d;
  }
}

TEST(Sic, DeterministicForSeed) {
  const auto a = sic_fiducial(5), b = sic_fiducial(5);
  EXPECT_EQ(a.v, b.v);
  EXPECT_EQ(a.start_index, b.start_index);
}

TEST(Sic, Domain) {
  EXPECT_THROW(sic_fiducial(1), DomainError);
  EXPECT_THROW(sic_fiducial(9), DomainError);
}

TEST(Sic, OrbitOfArbitraryVectorIsParseval) {
  std::mt19937_64 rng(3);
  const auto f = weyl_heisenberg_orbit(gaussian_matrix(4, 1, Field::Complex, rng));
  EXPECT_TRUE(is_parseval(f, 1e-12));
  EXPECT_FALSE(certify_etf(f));
}
