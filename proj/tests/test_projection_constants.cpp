#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "projconst/etf.hpp"
#include "projconst/projection_constants.hpp"

using namespace projconst;

namespace {

OptConfig small_config(std::size_t starts = 8) {
  OptConfig c;
  c.starts = starts;
  return c;
}

}  // namespace

TEST(Objective, MatchesDirectSum) {
  std::mt19937_64 rng(1);
  for (Field f : {Field::Real, Field::Complex}) {
    const FrameMatrix u(oracle::random_parseval(3, 6, f, rng));
    const auto w = WeightVector::uniform(6);
    EXPECT_NEAR(objective(w, u), oracle::abs_sum(u.matrix(), w.t), 1e-13);
    EXPECT_NEAR(mu_objective(u), oracle::abs_sum(u.matrix(), w.t), 1e-13);
  }
}

TEST(Objective, RejectsBadInput) {
  EXPECT_THROW(mu_objective(FrameMatrix(Matrix::identity(2) * 2.0)), NotParsevalError);
  WeightVector w{{0.6, 0.6, 0.6}};
  EXPECT_THROW(w.validate(), DomainError);
  WeightVector neg{{-0.6, 0.8}};
  EXPECT_THROW(neg.validate(), DomainError);
}

TEST(Objective, OrthonormalBasisGivesOne) {
  EXPECT_NEAR(mu_objective(FrameMatrix(Matrix::identity(4))), 1.0, 1e-15);
  EXPECT_NEAR(optimal_weights(FrameMatrix(Matrix::identity(4))).value, 1.0, 1e-12);
}

TEST(OptimalWeights, AgainstSampling) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 4; ++rep) {
    const FrameMatrix u(oracle::random_parseval(2, 4, rep % 2 ? Field::Complex : Field::Real, rng));
    const auto ow = optimal_weights(u);
    const double sampled = oracle::sampled_quadratic_max(oracle::abs_gram(u.matrix()), 100000, rep);
    EXPECT_GE(ow.value, sampled - 1e-12);
    EXPECT_NEAR(ow.value, sampled, 5e-3);
    EXPECT_NEAR(objective(ow.t, u), ow.value, 1e-10);
    EXPECT_NO_THROW(ow.t.validate(1e-10));
  }
}

TEST(OptimalWeights, EtfHasUniformPerronVector) {
  const auto f = normalize_to_parseval(real_maximal_etf(3));
  const auto ow = optimal_weights(f);
  for (double t : ow.t.t) EXPECT_NEAR(t, 1.0 / std::sqrt(6.0), 1e-10);
  EXPECT_NEAR(ow.value, (1.0 + std::sqrt(5.0)) / 2.0, 1e-12);
}

TEST(Delta, ExactForms) {
  EXPECT_EQ(delta_bound_exact(2, 3).to_string(), "4/3");
  EXPECT_EQ(delta_bound_exact(3, 6).to_string(), "(1+sqrt(5))/2");
  EXPECT_EQ(delta_bound_exact(7, 28).to_string(), "5/2");
  EXPECT_EQ(delta_bound_exact(23, 276).to_string(), "14/3");
  EXPECT_EQ(delta_bound_exact(3, 9).to_string(), "5/3");
  EXPECT_EQ(delta_bound_exact(4, 4).to_string(), "1");
  EXPECT_EQ(delta_bound_rational(2, 3)->to_string(), "4/3");
  EXPECT_FALSE(delta_bound_rational(3, 6).has_value());
}

TEST(Delta, MatchesDefinition) {
  for (std::uint64_t m = 1; m <= 8; ++m)
    for (std::uint64_t n = m; n <= 40; ++n) {
      EXPECT_NEAR(delta_bound(m, n), oracle::delta(m, n), 1e-12) << m << "," << n;
      EXPECT_NEAR(delta_bound_exact(m, n).to_double(), oracle::delta(m, n), 1e-12);
    }
  EXPECT_THROW(delta_bound(3, 2), DomainError);
  EXPECT_THROW(delta_bound(0, 2), DomainError);
}

TEST(Delta, ComplexClosedForm) {
  for (std::uint64_t m = 2; m <= 10; ++m) {
    const double md = static_cast<double>(m);
    EXPECT_NEAR(global_upper_bound(m, Field::Complex), (1.0 + (md - 1.0) * std::sqrt(md + 1.0)) / md, 1e-12);
    EXPECT_NEAR(global_upper_bound(m, Field::Real), oracle::delta(md, md * (md + 1) / 2), 1e-12);
  }
  EXPECT_EQ(global_upper_bound(1, Field::Real), 1.0);
}

TEST(Golden, Values) {
  EXPECT_EQ(golden_value(2, Field::Real)->exact, "4/3");
  EXPECT_EQ(golden_value(23, Field::Real)->exact, "14/3");
  EXPECT_FALSE(golden_value(4, Field::Real).has_value());
  EXPECT_TRUE(golden_value(48, Field::Complex).has_value());
  EXPECT_FALSE(golden_value(18, Field::Complex).has_value());
  EXPECT_EQ(golden_value(1, Field::Real)->value, 1.0);
}

TEST(BoundReport, Fields) {
  const auto r = bound_report(2, std::nullopt, Field::Real);
  EXPECT_EQ(r.N, 3u);
  EXPECT_EQ(r.delta_exact, "4/3");
  EXPECT_DOUBLE_EQ(*r.welch, 0.5);
  ASSERT_TRUE(r.golden.has_value());
  const auto t = bound_report(2, 2, Field::Real);
  EXPECT_EQ(t.delta, 1.0);
  EXPECT_FALSE(t.welch.has_value());
  EXPECT_FALSE(t.golden.has_value());
}

TEST(Smoothed, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(3);
  for (Field f : {Field::Real, Field::Complex}) {
    const Matrix u = oracle::random_parseval(2, 5, f, rng);
    std::vector<double> t(5);
    std::uniform_real_distribution<double> ud(0.1, 1.0);
    for (auto& e : t) e = ud(rng);
    const double eps = 1e-2;
    const Matrix g = smoothed_gradient(t, u, eps);
    const Matrix e = gaussian_matrix(2, 5, f, rng);
    const double h = 1e-6;
    const double fd =
        (smoothed_objective(t, u + e * h, eps) - smoothed_objective(t, u - e * h, eps)) / (2.0 * h);
    double analytic = 0.0;
    for (std::size_t k = 0; k < g.data().size(); ++k) analytic += (std::conj(g.data()[k]) * e.data()[k]).real();
    EXPECT_NEAR(analytic, fd, 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST(Smoothed, TendsToObjective) {
  std::mt19937_64 rng(4);
  const Matrix u = oracle::random_parseval(3, 6, Field::Real, rng);
  const auto w = WeightVector::uniform(6);
  EXPECT_NEAR(smoothed_objective(w.t, u, 1e-9), oracle::abs_sum(u, w.t), 1e-8);
}

TEST(Search, GrunbaumValue) {
  const auto r = lambda_search(2, 3, Field::Real, small_config());
  EXPECT_NEAR(r.best_value, 4.0 / 3.0, 1e-6);
  EXPECT_LT(r.gap, 1e-6);
  EXPECT_TRUE(is_parseval(r.best_U, 1e-10));
  EXPECT_EQ(r.start_values.size(), 8u);
}

TEST(Search, MuMatchesKnownOptima) {
  EXPECT_NEAR(mu_search(2, 3, Field::Real, small_config()).best_value, 4.0 / 3.0, 1e-6);
  EXPECT_NEAR(mu_search(2, 4, Field::Complex, small_config()).best_value, (1.0 + std::sqrt(3.0)) / 2.0, 1e-6);
}

TEST(Search, NeverExceedsDelta) {
  for (auto [m, n] : {std::pair{2, 4}, std::pair{2, 5}, std::pair{3, 5}}) {
    const auto l = lambda_search(m, n, Field::Real, small_config(4));
    const auto u = mu_search(m, n, Field::Real, small_config(4));
    EXPECT_LE(l.best_value, l.delta_bound + 1e-9);
    EXPECT_LE(u.best_value, l.best_value + 1e-6);
  }
}

TEST(Search, TrivialCases) {
  for (std::uint64_t m = 1; m <= 6; ++m) {
    EXPECT_NEAR(lambda_search(m, m, Field::Real).best_value, 1.0, 1e-9);
    EXPECT_NEAR(mu_search(m, m, Field::Complex).best_value, 1.0, 1e-9);
  }
  for (std::uint64_t n = 1; n <= 6; ++n) {
    EXPECT_NEAR(lambda_search(1, n, Field::Real, small_config(2)).best_value, 1.0, 1e-9);
    EXPECT_NEAR(mu_search(1, n, Field::Complex, small_config(2)).best_value, 1.0, 1e-9);
  }
  EXPECT_THROW(lambda_search(3, 2, Field::Real), DomainError);
}

TEST(Search, DeterministicAcrossThreadCounts) {
  OptConfig a = small_config(6), b = small_config(6);
  a.threads = 1;
  b.threads = 4;
  const auto ra = lambda_search(2, 4, Field::Real, a);
  const auto rb = lambda_search(2, 4, Field::Real, b);
  EXPECT_EQ(ra, rb);
  const auto rc = lambda_search(2, 4, Field::Real, a);
  EXPECT_EQ(ra, rc);
}

TEST(Search, SeedChangesStarts) {
  OptConfig a = small_config(2), b = small_config(2);
  b.seed = 1;
  EXPECT_NE(mu_search(3, 5, Field::Real, a).start_values, mu_search(3, 5, Field::Real, b).start_values);
}

TEST(Equality, GoldenEtfs) {
  const auto e3 = certify_equality(real_maximal_etf(3));
  EXPECT_TRUE(e3.ok);
  EXPECT_NEAR(e3.perron_value, (1.0 + std::sqrt(5.0)) / 2.0, 1e-9);
  const auto e7 = certify_equality(real_maximal_etf(7));
  EXPECT_NEAR(e7.uniform_value, 2.5, 1e-9);
  const auto s3 = certify_equality(weyl_heisenberg_orbit(sic_fiducial(3).v));
  EXPECT_NEAR(s3.perron_value, 5.0 / 3.0, 1e-9);
  // Non-maximal ETFs also reach delta.
  EXPECT_TRUE(certify_equality(simplex_etf(4)).ok);
}

TEST(Equality, RejectsNonEtf) {
  EXPECT_THROW(certify_equality(FrameMatrix(Matrix::identity(3))), NotEtfError);
  std::mt19937_64 rng(5);
  EXPECT_THROW(certify_equality(FrameMatrix(oracle::random_parseval(3, 6, Field::Real, rng))), NotEtfError);
}

// No ETF(4,10) exists; these are frozen-seed values, not ground truth.
TEST(Search, FrozenSeedRegression410) {
  OptConfig c = small_config(8);
  const auto l = lambda_search(4, 10, Field::Real, c);
  const auto u = mu_search(4, 10, Field::Real, c);
  EXPECT_NEAR(l.best_value, 1.8495938795016535, 1e-9);
  EXPECT_NEAR(u.best_value, 1.8485281374238576, 1e-9);
  EXPECT_LT(l.best_value, l.delta_bound);
}
