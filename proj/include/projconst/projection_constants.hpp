#pragma once

// Maximal (lambda) and quasimaximal (mu) relative projection constants.
//
// For a Parseval frame U (UU* = I_m) and weights t >= 0, |t| = 1, the quantity
//     F(t, U) = sum_{i,j} t_i t_j |(U*U)_{ij}|
// is maximized: over (t, U) for lambda_K(m, N), and over U with t uniform for
// mu_K(m, N). For fixed U the inner maximum over t is the Perron root of the
// nonnegative matrix |U*U|, attained at its Perron vector.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "projconst/errors.hpp"
#include "projconst/frames.hpp"
#include "projconst/matrix.hpp"
#include "projconst/rational.hpp"

namespace projconst {

/// Nonnegative unit weight vector.
struct WeightVector {
  std::vector<double> t;

  static WeightVector uniform(std::size_t n) {
    return {std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)))};
  }

  /// Throws DomainError unless every entry is >= 0 and the norm is 1 within tol.
  void validate(double tol = 1e-12) const {
    double s = 0.0;
    for (double e : t) {
      if (!(e >= 0.0)) throw DomainError("WeightVector: negative or NaN entry");
      s += e * e;
    }
    if (std::abs(std::sqrt(s) - 1.0) > tol) throw DomainError("WeightVector: not a unit vector");
  }

  bool operator==(const WeightVector&) const = default;
};

inline void require_parseval(const FrameMatrix& f, double tol, const char* where) {
  const double resid = max_abs_diff(frame_operator(f), Matrix::identity(f.m(), f.field()));
  if (resid >= tol)
    throw NotParsevalError(std::string(where) + ": UU* deviates from I by " + std::to_string(resid));
}

namespace detail {

inline double weighted_abs_sum(const std::vector<double>& t, const Matrix& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < g.cols(); ++j) row += t[j] * std::abs(g(i, j));
    s += t[i] * row;
  }
  return s;
}

}  // namespace detail

/// sum_{i,j} t_i t_j |(U*U)_{ij}| for a Parseval frame.
inline double objective(const WeightVector& w, const FrameMatrix& f, double parseval_tol = 1e-9) {
  if (w.t.size() != f.N()) throw ShapeError("objective: weight length differs from N");
  require_parseval(f, parseval_tol, "objective");
  return detail::weighted_abs_sum(w.t, gram(f));
}

/// (1/N) sum_{i,j} |(U*U)_{ij}|, the equal-weight objective.
inline double mu_objective(const FrameMatrix& f, double parseval_tol = 1e-9) {
  return objective(WeightVector::uniform(f.N()), f, parseval_tol);
}

struct OptimalWeights {
  WeightVector t;
  double value = 0.0;
};

/// Exact inner maximization: the Perron eigenpair of |U*U|.
inline OptimalWeights optimal_weights(const FrameMatrix& f, double parseval_tol = 1e-9) {
  require_parseval(f, parseval_tol, "optimal_weights");
  const auto pair = dominant_eigenpair(entrywise_abs(gram(f)));
  OptimalWeights out;
  out.value = pair.value;
  out.t.t.resize(f.N());
  for (std::size_t i = 0; i < f.N(); ++i) out.t.t[i] = pair.vector(i, 0).real();
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form bounds

/// delta_{m,N} = (m/N)(1 + sqrt((N-1)(N-m)/m)) as an exact a + b sqrt(c).
inline QuadraticSurd delta_bound_exact(std::uint64_t m, std::uint64_t n) {
  if (m < 1 || n < m) throw DomainError("delta_bound: need N >= m >= 1");
  const Rational r(static_cast<std::int64_t>((n - 1) * (n - m)), static_cast<std::int64_t>(m));
  const Rational lead(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n));
  QuadraticSurd out;
  out.a = lead;
  if (r.num() == 0) return out;
  // sqrt(p/q) = sqrt(p q) / q = s sqrt(c) / q
  const auto [s, c] = squarefree_split(static_cast<std::uint64_t>(r.num()) * static_cast<std::uint64_t>(r.den()));
  out.b = lead * Rational(static_cast<std::int64_t>(s), r.den());
  out.c = c;
  if (out.c == 1) {
    out.a = out.a + out.b;
    out.b = Rational(0);
  }
  return out;
}

/// Rational value of delta_{m,N} when (N-1)(N-m)/m is a rational square.
inline std::optional<Rational> delta_bound_rational(std::uint64_t m, std::uint64_t n) {
  const auto s = delta_bound_exact(m, n);
  if (!s.is_rational()) return std::nullopt;
  return s.rational_value();
}

inline double delta_bound(std::uint64_t m, std::uint64_t n) {
  if (m < 1 || n < m) throw DomainError("delta_bound: need N >= m >= 1");
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  return (md / nd) * (1.0 + std::sqrt((nd - 1.0) * (nd - md) / md));
}

/// Upper bound on lambda_K(m): 2/(m+1) (1 + (m-1)/2 sqrt(m+2)) over R,
/// (1/m)(1 + (m-1) sqrt(m+1)) over C; 1 for m = 1.
inline double global_upper_bound(std::uint64_t m, Field field) {
  if (m < 1) throw DomainError("global_upper_bound: need m >= 1");
  if (m == 1) return 1.0;
  const double md = static_cast<double>(m);
  const double closed = field == Field::Real
                            ? (2.0 / (md + 1.0)) * (1.0 + 0.5 * (md - 1.0) * std::sqrt(md + 2.0))
                            : (1.0 / md) * (1.0 + (md - 1.0) * std::sqrt(md + 1.0));
  const double via_delta = delta_bound(m, cardinality_cap(m, field));
  if (std::abs(closed - via_delta) > 1e-12 * std::max(1.0, closed))
    throw DomainError("global_upper_bound: closed form disagrees with delta_{m,cap}");
  return closed;
}

struct GoldenValue {
  std::string exact;  // e.g. "4/3" or "(1+sqrt(5))/2"
  double value = 0.0;
  std::string label;

  bool operator==(const GoldenValue&) const = default;
};

/// Known exact lambda_K(m) values, attained at N = cap when a maximal ETF exists.
inline std::optional<GoldenValue> golden_value(std::uint64_t m, Field field) {
  static constexpr std::uint64_t kReal[] = {2, 3, 7, 23};
  static constexpr std::uint64_t kComplex[] = {1,  2,  3,  4,  5,  6,  7,  8,  9,  10, 11, 12,
                                               13, 14, 15, 16, 17, 19, 24, 28, 35, 48};
  const bool known = field == Field::Real
                         ? std::find(std::begin(kReal), std::end(kReal), m) != std::end(kReal)
                         : std::find(std::begin(kComplex), std::end(kComplex), m) != std::end(kComplex);
  if (m == 1) return GoldenValue{"1", 1.0, "trivial case m=1"};
  if (!known) return std::nullopt;
  const auto surd = delta_bound_exact(m, cardinality_cap(m, field));
  return GoldenValue{surd.to_string(), surd.to_double(),
                     field == Field::Real ? "real maximal ETF exists" : "complex maximal ETF (SIC) exists"};
}

struct BoundReport {
  std::uint64_t m = 0;
  std::uint64_t N = 0;
  Field field = Field::Real;
  double delta = 0.0;
  std::string delta_exact;
  std::optional<double> welch;  // absent when N = m
  std::uint64_t cap = 0;
  double global_bound = 0.0;
  std::optional<GoldenValue> golden;  // only reported at N = cap

  bool operator==(const BoundReport& o) const {
    auto gold_eq = [](const std::optional<GoldenValue>& a, const std::optional<GoldenValue>& b) {
      if (a.has_value() != b.has_value()) return false;
      return !a || (a->exact == b->exact && a->value == b->value && a->label == b->label);
    };
    return m == o.m && N == o.N && field == o.field && delta == o.delta &&
           delta_exact == o.delta_exact && welch == o.welch && cap == o.cap &&
           global_bound == o.global_bound && gold_eq(golden, o.golden);
  }
};

/// Closed-form quantities for (m, N); N defaults to the cardinality cap.
inline BoundReport bound_report(std::uint64_t m, std::optional<std::uint64_t> n, Field field) {
  BoundReport r;
  r.m = m;
  r.field = field;
  r.cap = cardinality_cap(m, field);
  r.N = n.value_or(r.cap);
  r.delta = delta_bound(m, r.N);
  r.delta_exact = delta_bound_exact(m, r.N).to_string();
  if (r.N > m) r.welch = welch_angle(m, r.N);
  r.global_bound = global_upper_bound(m, field);
  if (r.N == r.cap) r.golden = golden_value(m, field);
  return r;
}

// ---------------------------------------------------------------------------
// Smoothed objective and its gradient

/// sum_{i,j} t_i t_j sqrt(|G_ij|^2 + eps^2) with G = U*U.
inline double smoothed_objective(const std::vector<double>& t, const Matrix& u, double eps) {
  const Matrix g = gram(FrameMatrix(u));
  double s = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      s += t[i] * t[j] * std::sqrt(std::norm(g(i, j)) + eps * eps);
  return s;
}

/// Euclidean gradient 2 U M of the smoothed objective, where
/// M_ij = t_i t_j G_ij / sqrt(|G_ij|^2 + eps^2). For complex U the directional
/// derivative along E is Re <gradient, E>.
inline Matrix smoothed_gradient(const std::vector<double>& t, const Matrix& u, double eps) {
  const Matrix g = gram(FrameMatrix(u));
  const std::size_t n = g.rows();
  Matrix mm(n, n, u.field());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      mm(i, j) = t[i] * t[j] * g(i, j) / std::sqrt(std::norm(g(i, j)) + eps * eps);
  return multiply(u, mm) * 2.0;
}

// ---------------------------------------------------------------------------
// Searches

struct OptConfig {
  std::size_t starts = 32;
  std::uint64_t seed = 0;
  double eps_init = 1e-1;
  double eps_final = 1e-8;
  double eps_factor = 0.5;
  std::size_t max_outer = 1000;  // ascent iterations per smoothing stage
  std::size_t max_linesearch = 30;
  double tol = 1e-12;
  std::size_t threads = 0;  // 0: hardware concurrency
};

struct OptReport {
  std::string mode;  // "lambda" or "mu"
  std::uint64_t m = 0;
  std::uint64_t N = 0;
  Field field = Field::Real;
  double best_value = 0.0;
  WeightVector best_t;
  FrameMatrix best_U;
  double delta_bound = 0.0;
  double gap = 0.0;
  std::size_t starts = 0;
  std::size_t best_start = 0;
  std::vector<std::size_t> iterations;  // per start
  std::vector<double> start_values;     // per start
  bool converged = false;
  std::uint64_t seed = 0;

  bool operator==(const OptReport&) const = default;
};

namespace detail {

enum class SearchMode { Mu, Lambda };

struct StartResult {
  double value = 0.0;
  std::vector<double> t;
  Matrix u;
  std::size_t iterations = 0;
  bool converged = true;
};

inline std::vector<double> perron_weights(const Matrix& u, double* value) {
  const Matrix a = entrywise_abs(gram(FrameMatrix(u)));
  const std::size_t n = a.rows();
  std::vector<double> dense(n * n);
  for (std::size_t k = 0; k < n * n; ++k) dense[k] = a.data()[k].real();
  auto run = power_run(dense, n, std::vector<double>(n, 1.0), 1e-14, 20000);
  if (value) *value = run.value;
  return std::move(run.x);
}

inline StartResult ascend(const Matrix& start, SearchMode mode, const OptConfig& cfg) {
  StartResult res;
  Matrix u = orthonormalize_rows(start);
  const std::size_t n = u.cols();
  std::vector<double> t = mode == SearchMode::Lambda ? perron_weights(u, nullptr)
                                                     : WeightVector::uniform(n).t;
  double eps = cfg.eps_init;
  for (;;) {
    double step = 1.0;
    bool stage_done = false;
    for (std::size_t it = 0; it < cfg.max_outer; ++it) {
      ++res.iterations;
      if (mode == SearchMode::Lambda) t = perron_weights(u, nullptr);
      const double f0 = smoothed_objective(t, u, eps);
      Matrix d = smoothed_gradient(t, u, eps);
      // Project onto the tangent directions that move the row space.
      d -= multiply(multiply(d, adjoint(u)), u);
      const double gnorm2 = std::pow(frobenius_norm(d), 2);
      if (std::sqrt(gnorm2) < cfg.tol) {
        stage_done = true;
        break;
      }
      bool accepted = false;
      double f1 = f0;
      Matrix trial;
      double s = step;
      for (std::size_t ls = 0; ls < cfg.max_linesearch; ++ls, s *= 0.5) {
        try {
          trial = orthonormalize_rows(u + d * s);
        } catch (const RankError&) {
          continue;
        }
        f1 = smoothed_objective(t, trial, eps);
        if (f1 >= f0 + 1e-4 * s * gnorm2) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        stage_done = true;
        break;
      }
      u = std::move(trial);
      step = std::min(2.0 * s, 1e3);
      if (f1 - f0 < cfg.tol * std::max(1.0, std::abs(f0))) {
        stage_done = true;
        break;
      }
    }
    if (!stage_done) res.converged = false;
    if (eps <= cfg.eps_final) break;
    eps = std::max(eps * cfg.eps_factor, cfg.eps_final);
  }
  const FrameMatrix frame(u);
  if (mode == SearchMode::Lambda) {
    double value = 0.0;
    t = perron_weights(u, &value);
    res.value = detail::weighted_abs_sum(t, gram(frame));
  } else {
    res.value = detail::weighted_abs_sum(t, gram(frame));
  }
  res.t = std::move(t);
  res.u = std::move(u);
  return res;
}

inline OptReport run_search(std::uint64_t m, std::uint64_t n, Field field, const OptConfig& cfg,
                            SearchMode mode) {
  if (m < 1 || n < m) throw DomainError("search: need N >= m >= 1");
  OptReport rep;
  rep.mode = mode == SearchMode::Lambda ? "lambda" : "mu";
  rep.m = m;
  rep.N = n;
  rep.field = field;
  rep.seed = cfg.seed;
  rep.delta_bound = delta_bound(m, n);
  if (n == m) {
    rep.best_value = 1.0;
    rep.best_t.t.assign(n, 0.0);
    rep.best_t.t[0] = 1.0;
    if (mode == SearchMode::Mu) rep.best_t = WeightVector::uniform(n);
    rep.best_U = FrameMatrix(Matrix::identity(m, field));
    rep.gap = rep.delta_bound - rep.best_value;
    rep.converged = true;
    return rep;
  }
  const std::size_t starts = std::max<std::size_t>(1, cfg.starts);
  std::vector<StartResult> results(starts);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t s; (s = next.fetch_add(1)) < starts;) {
      std::mt19937_64 rng(cfg.seed * 1000003ULL + s);
      results[s] = ascend(gaussian_matrix(m, n, field, rng), mode, cfg);
    }
  };
  std::size_t nthreads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min(nthreads, starts);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < nthreads; ++k) pool.emplace_back(worker);
  }
  std::size_t best = 0;
  for (std::size_t s = 0; s < starts; ++s) {
    rep.iterations.push_back(results[s].iterations);
    rep.start_values.push_back(results[s].value);
    if (results[s].value > results[best].value) best = s;
  }
  rep.starts = starts;
  rep.best_start = best;
  rep.best_value = results[best].value;
  rep.best_t.t = results[best].t;
  rep.best_U = FrameMatrix(results[best].u);
  rep.converged = results[best].converged;
  rep.gap = rep.delta_bound - rep.best_value;
  return rep;
}

}  // namespace detail

/// Estimates mu_K(m, N): multi-start smoothed ascent over Parseval frames with
/// uniform weights.
inline OptReport mu_search(std::uint64_t m, std::uint64_t n, Field field, const OptConfig& cfg = {}) {
  return detail::run_search(m, n, field, cfg, detail::SearchMode::Mu);
}

/// Estimates lambda_K(m, N): alternates the exact Perron weights with smoothed
/// ascent steps on U.
inline OptReport lambda_search(std::uint64_t m, std::uint64_t n, Field field, const OptConfig& cfg = {}) {
  return detail::run_search(m, n, field, cfg, detail::SearchMode::Lambda);
}

// ---------------------------------------------------------------------------
// Equality certificate

struct EqualityReport {
  std::uint64_t m = 0;
  std::uint64_t N = 0;
  Field field = Field::Real;
  double delta = 0.0;
  double uniform_value = 0.0;  // objective at t uniform
  double perron_value = 0.0;   // Perron root of |U*U|
  double perron_uniform_deviation = 0.0;
  bool uniform_matches = false;
  bool perron_matches = false;
  bool ok = false;

  bool operator==(const EqualityReport&) const = default;
};

/// For an ETF(m, N), verifies that both the equal-weight objective and the
/// Perron value reach delta_{m,N}, with a uniform Perron vector.
inline EqualityReport certify_equality(const FrameMatrix& f, double etf_tol = 1e-8,
                                       double value_tol = 1e-9) {
  const auto cert = certify_etf_report(f, etf_tol);
  if (!cert.ok) throw NotEtfError("certify_equality: frame is not an ETF (" + cert.reasons.front() + ")");
  const FrameMatrix p = normalize_to_parseval(f, etf_tol);
  EqualityReport r;
  r.m = p.m();
  r.N = p.N();
  r.field = p.field();
  r.delta = delta_bound(r.m, r.N);
  r.uniform_value = mu_objective(p, etf_tol);
  const auto ow = optimal_weights(p, etf_tol);
  r.perron_value = ow.value;
  const double u = 1.0 / std::sqrt(static_cast<double>(r.N));
  for (double e : ow.t.t) r.perron_uniform_deviation = std::max(r.perron_uniform_deviation, std::abs(e - u));
  r.uniform_matches = std::abs(r.uniform_value - r.delta) < value_tol;
  r.perron_matches = std::abs(r.perron_value - r.delta) < value_tol && r.perron_uniform_deviation < 1e-6;
  r.ok = r.uniform_matches && r.perron_matches;
  return r;
}

}  // namespace projconst
