#pragma once

// Column replication: turning a weighted optimum (t, U) of the lambda problem
// into an equal-weight frame. With rational weights t = n / q, block i of the
// replicated frame holds n_i^2 copies of u_i / n_i; it stays Parseval and its
// equal-weight objective equals F(t, U) / |t|^2.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "projconst/errors.hpp"
#include "projconst/frames.hpp"
#include "projconst/projection_constants.hpp"

namespace projconst {

struct RationalWeights {
  std::int64_t q = 1;
  std::vector<std::int64_t> n;

  /// Sum of n_i^2: the column count of the replicated frame.
  std::int64_t total_columns() const {
    std::int64_t s = 0;
    for (auto v : n) {
      std::int64_t sq;
      if (__builtin_mul_overflow(v, v, &sq) || __builtin_add_overflow(s, sq, &s))
        throw PrecisionError("RationalWeights: column count overflows");
    }
    return s;
  }

  /// t_eps = n / q as doubles.
  std::vector<double> values() const {
    std::vector<double> out(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) out[i] = static_cast<double>(n[i]) / static_cast<double>(q);
    return out;
  }

  /// |t_eps|, computed as sqrt(sum n_i^2) / q.
  double norm() const { return std::sqrt(static_cast<double>(total_columns())) / static_cast<double>(q); }

  bool operator==(const RationalWeights&) const = default;
};

struct RationalizeOptions {
  std::int64_t base = 10;
  std::int64_t max_denominator = 100'000'000;
  // Columns whose count must stay >= 1 even where t_i rounds to zero. Needed
  // when u_i != 0, or the replicated frame loses tightness.
  std::vector<bool> keep_positive;
};

/// Rounds t onto the grid (1/q) Z with q the smallest power of the base such that
/// |t - t_eps| <= eps. eps = 0 asks for an exact representation; the result is then
/// reduced to lowest terms.
inline RationalWeights rationalize(const std::vector<double>& t, double eps,
                                   const RationalizeOptions& opt = {}) {
  if (eps < 0.0) throw DomainError("rationalize: eps must be >= 0");
  for (double e : t)
    if (!(e >= 0.0)) throw DomainError("rationalize: weights must be nonnegative");
  for (std::int64_t q = 1; q <= opt.max_denominator; q *= opt.base) {
    RationalWeights w;
    w.q = q;
    w.n.resize(t.size());
    double err2 = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      w.n[i] = std::llround(t[i] * static_cast<double>(q));
      if (w.n[i] == 0 && i < opt.keep_positive.size() && opt.keep_positive[i]) w.n[i] = 1;
      const double d = t[i] - static_cast<double>(w.n[i]) / static_cast<double>(q);
      err2 += d * d;
    }
    const bool good = eps == 0.0 ? err2 == 0.0 : std::sqrt(err2) <= eps;
    if (good) {
      if (eps == 0.0) {
        std::int64_t g = q;
        for (auto v : w.n) g = std::gcd(g, v);
        if (g > 1) {
          w.q /= g;
          for (auto& v : w.n) v /= g;
        }
      }
      return w;
    }
    if (q > opt.max_denominator / opt.base) break;
  }
  throw PrecisionError("rationalize: no denominator up to " + std::to_string(opt.max_denominator) +
                       " reaches eps=" + std::to_string(eps));
}

/// Exact weights n / q given directly.
inline RationalWeights exact_weights(std::vector<std::int64_t> n, std::int64_t q = 1) {
  if (q <= 0) throw DomainError("exact_weights: q must be positive");
  for (auto v : n)
    if (v < 0) throw DomainError("exact_weights: counts must be nonnegative");
  return {q, std::move(n)};
}

namespace detail {

inline Matrix replicate_columns(const FrameMatrix& f, const RationalWeights& w) {
  const auto total = w.total_columns();
  Matrix out(f.m(), static_cast<std::size_t>(total), f.field());
  std::size_t col = 0;
  for (std::size_t i = 0; i < f.N(); ++i) {
    const auto ni = w.n[i];
    if (ni == 0) continue;
    const double scale = 1.0 / static_cast<double>(ni);
    for (std::int64_t c = 0; c < ni * ni; ++c, ++col)
      for (std::size_t r = 0; r < f.m(); ++r) out(r, col) = f.matrix()(r, i) * scale;
  }
  return out;
}

}  // namespace detail

/// Builds U_eps = [u_1 1*_{n_1^2} / n_1 | ... | u_N 1*_{n_N^2} / n_N]. Blocks with
/// n_i = 0 are empty. Throws NotTightError if the result is not Parseval
/// (within 1e-10) and GuardrailError above max_columns columns.
inline FrameMatrix replicate(const FrameMatrix& f, const RationalWeights& w,
                             std::int64_t max_columns = 1'000'000) {
  if (w.n.size() != f.N()) throw ShapeError("replicate: weight length differs from N");
  require_parseval(f, 1e-9, "replicate");
  const auto total = w.total_columns();
  if (total == 0) throw EmptyFrameError("replicate: all counts are zero");
  if (total > max_columns)
    throw GuardrailError("replicate: " + std::to_string(total) + " columns exceeds the limit " +
                         std::to_string(max_columns));
  Matrix u = detail::replicate_columns(f, w);
  if (u.cols() < u.rows()) throw NotTightError("replicate: fewer columns than rows");
  FrameMatrix out(std::move(u));
  const double resid = max_abs_diff(frame_operator(out), Matrix::identity(f.m(), f.field()));
  if (resid >= 1e-10)
    throw NotTightError("replicate: result is not Parseval (residual " + std::to_string(resid) +
                        "); a column with zero count is nonzero");
  return out;
}

struct ReplicationIdentity {
  double lhs = 0.0;                    // (1/N~) sum |U_eps* U_eps|, analytic
  std::optional<double> lhs_materialized;  // same, from the explicit matrix
  double rhs = 0.0;                    // F(t_eps / |t_eps|, U)
  std::int64_t columns = 0;            // N~
  bool ok = false;

  bool operator==(const ReplicationIdentity&) const = default;
};

/// Evaluates both sides of (1/N~) sum |U_eps* U_eps|_{ij} = F(t_eps, U) / |t_eps|^2.
/// The left side is computed analytically as sum n_i n_j |<u_i,u_j>| / N~ and, when
/// N~ <= materialize_limit, also from the explicit replicated matrix.
inline ReplicationIdentity verify_replication_identity(const FrameMatrix& f, const RationalWeights& w,
                                                       std::int64_t materialize_limit = 4096) {
  if (w.n.size() != f.N()) throw ShapeError("verify_replication_identity: weight length differs from N");
  require_parseval(f, 1e-9, "verify_replication_identity");
  ReplicationIdentity r;
  r.columns = w.total_columns();
  if (r.columns == 0) throw EmptyFrameError("verify_replication_identity: all counts are zero");
  const Matrix g = gram(f);
  const std::size_t n = f.N();
  // Row sums first, then a second pass: a fixed summation order.
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      row += static_cast<double>(w.n[j]) * std::abs(g(i, j));
    total += static_cast<double>(w.n[i]) * row;
  }
  r.lhs = total / static_cast<double>(r.columns);

  const double nrm = w.norm();
  WeightVector unit;
  unit.t = w.values();
  for (double& e : unit.t) e /= nrm;
  r.rhs = objective(unit, f);

  if (r.columns <= materialize_limit) {
    const Matrix u = detail::replicate_columns(f, w);
    const std::size_t nc = u.cols();
    double s = 0.0;
    for (std::size_t a = 0; a < nc; ++a) {
      double row = 0.0;
      for (std::size_t b = 0; b < nc; ++b) {
        Scalar ip = 0.0;
        for (std::size_t k = 0; k < u.rows(); ++k) ip += std::conj(u(k, a)) * u(k, b);
        row += std::abs(ip);
      }
      s += row;
    }
    r.lhs_materialized = s / static_cast<double>(nc);
  }
  const double scale = std::max(1.0, std::abs(r.rhs));
  r.ok = std::abs(r.lhs - r.rhs) < 1e-10 * scale &&
         (!r.lhs_materialized || std::abs(*r.lhs_materialized - r.rhs) < 1e-10 * scale);
  return r;
}

struct WitnessReport {
  OptReport lambda;              // the underlying lambda search
  double eps = 0.0;
  RationalWeights weights;
  std::int64_t columns = 0;      // N~
  double weight_error = 0.0;     // |t - t_eps|
  double norm_deviation = 0.0;   // | |t_eps| - 1 |
  double value_error = 0.0;      // F(t, U) - F(t_eps, U)
  double witness = 0.0;          // equal-weight objective of U_eps = F(t_eps)/|t_eps|^2
  std::optional<double> witness_materialized;
  double lower_bound = 0.0;      // (lambda - |value_error|) / (1 + eps)^2
  bool identity_ok = false;
  bool bound_ok = false;

  bool operator==(const WitnessReport&) const = default;
};

/// Runs lambda_search, rationalizes its weights, and reports the resulting
/// equal-weight witness together with both error components.
inline WitnessReport lambda_to_mu_witness(std::uint64_t m, std::uint64_t n, Field field, double eps,
                                          const OptConfig& cfg = {},
                                          std::int64_t materialize_limit = 4096) {
  if (eps <= 0.0) throw DomainError("lambda_to_mu_witness: eps must be > 0");
  WitnessReport r;
  r.eps = eps;
  r.lambda = lambda_search(m, n, field, cfg);
  // Any unit t is optimal for a unitary U; the uniform one replicates evenly.
  if (n == m) r.lambda.best_t = WeightVector::uniform(n);
  const FrameMatrix& u = r.lambda.best_U;
  RationalizeOptions opt;
  opt.keep_positive.resize(u.N());
  for (std::size_t i = 0; i < u.N(); ++i) opt.keep_positive[i] = u.column_norm(i) > 1e-12;
  r.weights = rationalize(r.lambda.best_t.t, eps, opt);
  r.columns = r.weights.total_columns();
  const auto te = r.weights.values();
  double err2 = 0.0;
  for (std::size_t i = 0; i < te.size(); ++i) err2 += (r.lambda.best_t.t[i] - te[i]) * (r.lambda.best_t.t[i] - te[i]);
  r.weight_error = std::sqrt(err2);
  r.norm_deviation = std::abs(r.weights.norm() - 1.0);
  const Matrix g = gram(u);
  r.value_error = r.lambda.best_value - detail::weighted_abs_sum(te, g);
  const auto id = verify_replication_identity(u, r.weights, materialize_limit);
  r.witness = id.lhs;
  r.witness_materialized = id.lhs_materialized;
  r.identity_ok = id.ok;
  r.lower_bound = (r.lambda.best_value - std::abs(r.value_error)) / ((1.0 + eps) * (1.0 + eps));
  r.bound_ok = r.witness >= r.lower_bound - 1e-12;
  return r;
}

}  // namespace projconst
