#pragma once

// Frames: finite vector systems u_1..u_N in K^m stored as the columns of an
// m x N matrix, plus the tightness / equiangularity checks built on them.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "projconst/errors.hpp"
#include "projconst/matrix.hpp"

namespace projconst {

class FrameMatrix {
 public:
  FrameMatrix() = default;
  /// Takes ownership of U (m x N); requires m >= 1 and N >= m.
  explicit FrameMatrix(Matrix u) : u_(std::move(u)) {
    if (u_.rows() < 1) throw ShapeError("FrameMatrix: need m >= 1");
    if (u_.cols() < u_.rows())
      throw ShapeError("FrameMatrix: need N >= m (got m=" + std::to_string(u_.rows()) +
                       ", N=" + std::to_string(u_.cols()) + ")");
    u_.check_field();
  }

  const Matrix& matrix() const noexcept { return u_; }
  std::size_t m() const noexcept { return u_.rows(); }
  std::size_t N() const noexcept { return u_.cols(); }
  Field field() const noexcept { return u_.field(); }

  double column_norm(std::size_t j) const {
    double s = 0.0;
    for (std::size_t i = 0; i < u_.rows(); ++i) s += std::norm(u_(i, j));
    return std::sqrt(s);
  }

  std::vector<double> column_norms() const {
    std::vector<double> out(N());
    for (std::size_t j = 0; j < N(); ++j) out[j] = column_norm(j);
    return out;
  }

  bool operator==(const FrameMatrix&) const = default;

 private:
  Matrix u_;
};

/// U*U, the N x N Gram matrix of the columns.
inline Matrix gram(const FrameMatrix& f) {
  const Matrix& u = f.matrix();
  const std::size_t m = f.m(), n = f.N();
  Matrix g(n, n, f.field());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Scalar s = 0.0;
      for (std::size_t k = 0; k < m; ++k) s += std::conj(u(k, i)) * u(k, j);
      g(i, j) = s;
      g(j, i) = std::conj(s);
    }
    g(i, i) = g(i, i).real();
  }
  return g;
}

/// U U*, the m x m frame operator.
inline Matrix frame_operator(const FrameMatrix& f) { return multiply(f.matrix(), adjoint(f.matrix())); }

struct TightCheck {
  bool tight = false;
  double alpha = 0.0;     // UU* = (1/alpha) I when tight
  double residual = 0.0;  // ||UU* - c I||_max with c = tr(UU*)/m
};

inline TightCheck is_tight(const FrameMatrix& f, double tol = 1e-9) {
  const Matrix s = frame_operator(f);
  const double c = trace(s).real() / static_cast<double>(f.m());
  TightCheck out;
  out.residual = max_abs_diff(s, Matrix::identity(f.m(), f.field()) * c);
  out.alpha = c > 0.0 ? 1.0 / c : std::numeric_limits<double>::infinity();
  out.tight = c > 0.0 && out.residual < tol;
  return out;
}

inline bool is_parseval(const FrameMatrix& f, double tol = 1e-9) {
  return max_abs_diff(frame_operator(f), Matrix::identity(f.m(), f.field())) < tol;
}

/// Rescales a tight frame by sqrt(alpha) so that UU* = I.
inline FrameMatrix normalize_to_parseval(const FrameMatrix& f, double tol = 1e-9) {
  const auto check = is_tight(f, tol);
  if (!check.tight)
    throw NotTightError("normalize_to_parseval: frame is not tight (residual " +
                        std::to_string(check.residual) + ")");
  return FrameMatrix(f.matrix() * std::sqrt(check.alpha));
}

/// Rescales every column to unit norm; throws ZeroColumnError on a zero column.
inline FrameMatrix unit_columns(const FrameMatrix& f) {
  Matrix u = f.matrix();
  for (std::size_t j = 0; j < f.N(); ++j) {
    const double nj = f.column_norm(j);
    if (nj == 0.0) throw ZeroColumnError("column " + std::to_string(j) + " is zero");
    for (std::size_t i = 0; i < f.m(); ++i) u(i, j) /= nj;
  }
  return FrameMatrix(std::move(u));
}

/// Common modulus |<u_i,u_j>| of an equiangular tight frame of N unit
/// vectors in K^m: sqrt((N-m)/(m(N-1))).
inline double welch_angle(std::size_t m, std::size_t n) {
  if (m < 1 || n <= m)
    throw DomainError("welch_angle: need N > m >= 1 (got m=" + std::to_string(m) +
                      ", N=" + std::to_string(n) + ")");
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  return std::sqrt((nd - md) / (md * (nd - 1.0)));
}

/// Largest N for which an ETF(m, N) can exist: m(m+1)/2 over R, m^2 over C.
inline std::uint64_t cardinality_cap(std::uint64_t m, Field field) {
  if (m < 1) throw DomainError("cardinality_cap: need m >= 1");
  return field == Field::Real ? m * (m + 1) / 2 : m * m;
}

struct CoherenceProfile {
  double offdiag_max = 0.0;
  double offdiag_min = 0.0;
  double offdiag_spread = 0.0;
  double welch_value = 0.0;
};

/// Statistics of |<u_i,u_j>| over i != j after normalizing columns.
inline CoherenceProfile coherence_profile(const FrameMatrix& f) {
  const Matrix g = gram(unit_columns(f));
  CoherenceProfile p;
  const std::size_t n = f.N();
  if (n > 1) {
    p.offdiag_max = 0.0;
    p.offdiag_min = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = std::min(1.0, std::abs(g(i, j)));
        p.offdiag_max = std::max(p.offdiag_max, v);
        p.offdiag_min = std::min(p.offdiag_min, v);
      }
  }
  p.offdiag_spread = p.offdiag_max - p.offdiag_min;
  p.welch_value = n > f.m() ? welch_angle(f.m(), n) : 0.0;
  return p;
}

struct EtfCertificate {
  bool ok = false;
  std::vector<std::string> reasons;  // empty when ok
  CoherenceProfile coherence;
  TightCheck tightness;
};

/// Checks the ETF conditions and lists every one that fails. Columns must share
/// one norm (unit after normalization); the frame may carry any tightness
/// constant. N = m is rejected unless allow_trivial is set.
inline EtfCertificate certify_etf_report(const FrameMatrix& f, double tol = 1e-9,
                                         bool allow_trivial = false) {
  EtfCertificate c;
  const auto norms = f.column_norms();
  double nmax = 0.0, nmin = std::numeric_limits<double>::infinity();
  for (double v : norms) {
    nmax = std::max(nmax, v);
    nmin = std::min(nmin, v);
  }
  if (nmin == 0.0) {
    c.reasons.push_back("zero column");
    return c;
  }
  if ((nmax - nmin) / nmax >= tol) c.reasons.push_back("columns do not share one norm");
  const FrameMatrix unit = unit_columns(f);
  c.tightness = is_tight(unit, tol);
  if (!c.tightness.tight) c.reasons.push_back("not tight");
  c.coherence = coherence_profile(unit);
  if (c.coherence.offdiag_spread >= tol) c.reasons.push_back("not equiangular");
  if (f.N() == f.m()) {
    if (!allow_trivial) c.reasons.push_back("degenerate N=m");
  } else if (std::abs(c.coherence.offdiag_max - c.coherence.welch_value) >= tol) {
    c.reasons.push_back("coherence differs from the Welch value");
  }
  if (f.N() > cardinality_cap(f.m(), f.field())) c.reasons.push_back("N exceeds the cardinality cap");
  c.ok = c.reasons.empty();
  return c;
}

inline bool certify_etf(const FrameMatrix& f, double tol = 1e-9) { return certify_etf_report(f, tol).ok; }

}  // namespace projconst
