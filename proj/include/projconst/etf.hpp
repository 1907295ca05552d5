#pragma once

// Constructions of equiangular tight frames: the simplex family, the real
// maximal ETFs in dimensions 2, 3 and 7, frames recovered from regular
// two-graphs (Seidel matrices), and Weyl-Heisenberg (SIC) orbits.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "projconst/errors.hpp"
#include "projconst/frames.hpp"
#include "projconst/matrix.hpp"

namespace projconst {

namespace detail {

// Orthonormal basis (as columns) of the complement of the all-ones vector in
// R^n; column k is (1,...,1,-k,0,...,0)/sqrt(k(k+1)) with k leading ones.
inline Matrix helmert_basis(std::size_t n) {
  Matrix b(n, n - 1, Field::Real);
  for (std::size_t k = 1; k < n; ++k) {
    const double s = 1.0 / std::sqrt(static_cast<double>(k * (k + 1)));
    for (std::size_t i = 0; i < k; ++i) b(i, k - 1) = s;
    b(k, k - 1) = -static_cast<double>(k) * s;
  }
  return b;
}

// Unit-normalizes the given columns, checks tightness and rescales to Parseval.
inline FrameMatrix parseval_from_columns(const Matrix& columns) {
  return normalize_to_parseval(unit_columns(FrameMatrix(columns)));
}

}  // namespace detail

/// Parseval ETF(m, m+1): the m+1 standard basis vectors of K^{m+1} projected
/// onto the complement of the all-ones vector, in Helmert coordinates.
inline FrameMatrix simplex_etf(std::size_t m, Field field = Field::Real) {
  if (m < 1) throw DomainError("simplex_etf: need m >= 1");
  Matrix u = adjoint(detail::helmert_basis(m + 1));
  if (field == Field::Complex) u = u.as_complex();
  return detail::parseval_from_columns(u);
}

/// Parseval ETF(m, m(m+1)/2) for m in {2, 3, 7}.
inline FrameMatrix real_maximal_etf(std::size_t m) {
  switch (m) {
    case 2:
      return simplex_etf(2, Field::Real);
    case 3: {
      // Diagonals of the icosahedron: cyclic shifts of (0, +-1, g).
      const double g = std::numbers::phi;
      const std::array<std::array<double, 3>, 2> seeds{{{0.0, 1.0, g}, {0.0, -1.0, g}}};
      Matrix u(3, 6, Field::Real);
      std::size_t col = 0;
      for (std::size_t shift = 0; shift < 3; ++shift)
        for (const auto& s : seeds) {
          for (std::size_t i = 0; i < 3; ++i) u((i + shift) % 3, col) = s[i];
          ++col;
        }
      return detail::parseval_from_columns(u);
    }
    case 7: {
      // e_i + e_j in R^8 (i < j) projected onto the complement of the ones vector.
      const Matrix basis = detail::helmert_basis(8);
      Matrix u(7, 28, Field::Real);
      std::size_t col = 0;
      for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = i + 1; j < 8; ++j) {
          for (std::size_t k = 0; k < 7; ++k) u(k, col) = basis(i, k) + basis(j, k);
          ++col;
        }
      return detail::parseval_from_columns(u);
    }
    default:
      throw UnsupportedError("real_maximal_etf: m=" + std::to_string(m) +
                             " is not built in (supported: 2, 3, 7); for m=23 load a "
                             "276-vertex Seidel matrix and use seidel_to_etf");
  }
}

/// Symmetric N x N matrix with zero diagonal and +-1 off the diagonal.
class SeidelMatrix {
 public:
  SeidelMatrix() = default;
  explicit SeidelMatrix(Matrix s) : s_(std::move(s)) {
    if (s_.rows() != s_.cols()) throw ShapeError("SeidelMatrix: not square");
    if (!s_.is_real()) throw FieldError("SeidelMatrix: must be REAL");
    for (std::size_t i = 0; i < s_.rows(); ++i)
      for (std::size_t j = 0; j < s_.cols(); ++j) {
        const Scalar v = s_(i, j);
        if (i == j ? v != 0.0 : (v != 1.0 && v != -1.0))
          throw DomainError("SeidelMatrix: bad entry at (" + std::to_string(i) + "," +
                            std::to_string(j) + ")");
        if (v != s_(j, i)) throw DomainError("SeidelMatrix: not symmetric");
      }
  }

  const Matrix& matrix() const noexcept { return s_; }
  std::size_t size() const noexcept { return s_.rows(); }

 private:
  Matrix s_;
};

/// Sign pattern of the Gram matrix of a real frame with no orthogonal pairs.
inline SeidelMatrix seidel_from_frame(const FrameMatrix& f) {
  if (f.field() != Field::Real) throw FieldError("seidel_from_frame: REAL frame required");
  const Matrix g = gram(f);
  Matrix s(f.N(), f.N(), Field::Real);
  for (std::size_t i = 0; i < f.N(); ++i)
    for (std::size_t j = 0; j < f.N(); ++j) {
      if (i == j) continue;
      if (g(i, j).real() == 0.0) throw DomainError("seidel_from_frame: orthogonal pair");
      s(i, j) = g(i, j).real() > 0 ? 1.0 : -1.0;
    }
  return SeidelMatrix(std::move(s));
}

/// Recovers the real ETF encoded by a regular two-graph. With lambda_min the
/// smallest Seidel eigenvalue (multiplicity N - m), G = I - S / lambda_min is the
/// Gram of N unit vectors in R^m; it is factored through the eigenvectors of S.
inline FrameMatrix seidel_to_etf(const SeidelMatrix& seidel, double tol = 1e-8) {
  const std::size_t n = seidel.size();
  if (n < 2) throw NotTwoGraphError("seidel_to_etf: need at least two vertices");
  const auto eig = symmetric_eigen(seidel.matrix());
  const double lmin = eig.values.front();
  const double lmax = eig.values.back();
  const double cluster = tol * std::max(1.0, std::abs(lmin));
  std::size_t mult_min = 0, mult_max = 0;
  for (double v : eig.values) {
    if (std::abs(v - lmin) <= cluster) ++mult_min;
    else if (std::abs(v - lmax) <= cluster) ++mult_max;
  }
  if (lmin >= 0.0 || mult_min + mult_max != n || mult_min == n)
    throw NotTwoGraphError("seidel_to_etf: spectrum is not that of a regular two-graph");
  const std::size_t m = n - mult_min;
  Matrix u(m, n, Field::Real);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t k = mult_min + r;
    const double scale = std::sqrt(std::max(0.0, 1.0 - eig.values[k] / lmin));
    for (std::size_t j = 0; j < n; ++j) u(r, j) = scale * eig.vectors(j, k);
  }
  Matrix target = Matrix::identity(n, Field::Real) - seidel.matrix() * (1.0 / lmin);
  FrameMatrix frame(std::move(u));
  const double resid = max_abs_diff(gram(frame), target);
  if (resid > tol)
    throw FactorizationError("seidel_to_etf: Gram factorization residual " + std::to_string(resid));
  FrameMatrix parseval = normalize_to_parseval(frame, tol);
  const auto cert = certify_etf_report(parseval, tol);
  if (!cert.ok)
    throw NotTwoGraphError("seidel_to_etf: recovered frame is not an ETF (" + cert.reasons.front() +
                           ")");
  return parseval;
}

// ---------------------------------------------------------------------------
// Weyl-Heisenberg orbits and SIC fiducials

struct SicSearchConfig {
  double tol = 1e-10;          // required coherence spread of the orbit
  std::size_t starts = 4000;   // random starts before giving up
  std::uint64_t seed = 0;
  std::size_t max_iter = 300;  // Levenberg-Marquardt iterations per start
};

struct SicFiducial {
  std::size_t d = 0;
  Matrix v;  // d x 1, COMPLEX, unit norm
  double achieved_spread = 0.0;
  bool exhausted = false;  // true when the search gave up before reaching tol
  std::size_t start_index = 0;
};

class SearchExhaustedError : public Error {
 public:
  SearchExhaustedError(const std::string& what, SicFiducial best)
      : Error(what), best_(std::move(best)) {}
  const SicFiducial& best() const noexcept { return best_; }

 private:
  SicFiducial best_;
};

namespace detail {

// (X^a Z^b v)_k = w^{b(k-a)} v_{k-a}, with X the cyclic shift and Z the clock.
inline std::vector<Scalar> wh_apply(const std::vector<Scalar>& v, std::size_t a, std::size_t b) {
  const std::size_t d = v.size();
  std::vector<Scalar> out(d);
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t src = (k + d - a) % d;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>((b * src) % d) / static_cast<double>(d);
    out[k] = std::polar(1.0, angle) * v[src];
  }
  return out;
}

// (Z^{-b} X^{-a} v)_k = w^{-bk} v_{k+a}; the adjoint of wh_apply(., a, b).
inline std::vector<Scalar> wh_apply_adjoint(const std::vector<Scalar>& v, std::size_t a, std::size_t b) {
  const std::size_t d = v.size();
  std::vector<Scalar> out(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>((b * k) % d) / static_cast<double>(d);
    out[k] = std::polar(1.0, angle) * v[(k + a) % d];
  }
  return out;
}

// Residuals r_p = |<v, D_p v>|^2 / |v|^4 - 1/(d+1) over p != 0 and their
// Jacobian with respect to (Re v, Im v). All residuals vanish exactly at a
// SIC fiducial.
inline void sic_residuals(const std::vector<Scalar>& v, std::vector<double>& r,
                          std::vector<double>* jac) {
  const std::size_t d = v.size();
  const std::size_t np = d * d - 1;
  r.assign(np, 0.0);
  if (jac) jac->assign(np * 2 * d, 0.0);
  double nrm = 0.0;
  for (const auto& z : v) nrm += std::norm(z);
  const double target = 1.0 / static_cast<double>(d + 1);
  std::size_t p = 0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      if (a == 0 && b == 0) continue;
      const auto dv = wh_apply(v, a, b);
      Scalar ov = 0.0;
      for (std::size_t k = 0; k < d; ++k) ov += std::conj(v[k]) * dv[k];
      const double ov2 = std::norm(ov);
      r[p] = ov2 / (nrm * nrm) - target;
      if (jac) {
        const auto dav = wh_apply_adjoint(v, a, b);
        for (std::size_t k = 0; k < d; ++k) {
          const Scalar dre = dv[k] + std::conj(dav[k]);
          const Scalar dim = Scalar(0, -1) * dv[k] + Scalar(0, 1) * std::conj(dav[k]);
          const double dov_re = 2.0 * (std::conj(ov) * dre).real();
          const double dov_im = 2.0 * (std::conj(ov) * dim).real();
          const double dn_re = 2.0 * v[k].real();
          const double dn_im = 2.0 * v[k].imag();
          const double n2 = nrm * nrm, n3 = n2 * nrm;
          (*jac)[p * 2 * d + k] = dov_re / n2 - 2.0 * ov2 * dn_re / n3;
          (*jac)[p * 2 * d + d + k] = dov_im / n2 - 2.0 * ov2 * dn_im / n3;
        }
      }
      ++p;
    }
}

// Solves the symmetric positive definite system a x = b in place (Cholesky).
inline bool solve_spd(std::vector<double> a, std::vector<double>& b, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double s = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) s -= a[j * n + k] * a[j * n + k];
    if (s <= 0.0) return false;
    a[j * n + j] = std::sqrt(s);
    for (std::size_t i = j + 1; i < n; ++i) {
      double t = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) t -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = t / a[j * n + j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double t = b[i];
    for (std::size_t k = 0; k < i; ++k) t -= a[i * n + k] * b[k];
    b[i] = t / a[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double t = b[i];
    for (std::size_t k = i + 1; k < n; ++k) t -= a[k * n + i] * b[k];
    b[i] = t / a[i * n + i];
  }
  return true;
}

inline double sum_squares(const std::vector<double>& r) {
  double s = 0.0;
  for (double e : r) s += e * e;
  return s;
}

// Levenberg-Marquardt on the SIC residuals from one starting vector.
inline std::vector<Scalar> sic_polish(std::vector<Scalar> v, std::size_t max_iter) {
  const std::size_t d = v.size();
  const std::size_t n = 2 * d;
  std::vector<double> r, jac, rn;
  sic_residuals(v, r, &jac);
  double cost = sum_squares(r);
  double mu = 1e-3;
  const std::size_t np = r.size();
  for (std::size_t it = 0; it < max_iter && cost > 1e-30; ++it) {
    std::vector<double> jtj(n * n, 0.0), jtr(n, 0.0);
    for (std::size_t p = 0; p < np; ++p) {
      const double* row = &jac[p * n];
      for (std::size_t i = 0; i < n; ++i) {
        jtr[i] += row[i] * r[p];
        for (std::size_t j = 0; j <= i; ++j) jtj[i * n + j] += row[i] * row[j];
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) jtj[i * n + j] = jtj[j * n + i];
    bool improved = false;
    for (int attempt = 0; attempt < 30; ++attempt) {
      std::vector<double> a = jtj;
      for (std::size_t i = 0; i < n; ++i) a[i * n + i] += mu * (1.0 + jtj[i * n + i]);
      std::vector<double> step(n);
      for (std::size_t i = 0; i < n; ++i) step[i] = -jtr[i];
      if (!solve_spd(a, step, n)) {
        mu *= 10.0;
        continue;
      }
      std::vector<Scalar> trial(d);
      for (std::size_t k = 0; k < d; ++k) trial[k] = v[k] + Scalar(step[k], step[d + k]);
      double nrm = 0.0;
      for (const auto& z : trial) nrm += std::norm(z);
      nrm = std::sqrt(nrm);
      for (auto& z : trial) z /= nrm;
      sic_residuals(trial, rn, nullptr);
      const double trial_cost = sum_squares(rn);
      if (trial_cost < cost) {
        v = std::move(trial);
        mu = std::max(mu / 10.0, 1e-15);
        improved = true;
        break;
      }
      mu *= 10.0;
    }
    if (!improved) break;
    sic_residuals(v, r, &jac);
    cost = sum_squares(r);
  }
  return v;
}

}  // namespace detail

/// The d^2 vectors X^a Z^b v (a, b in Z_d), rescaled to a Parseval frame.
inline FrameMatrix weyl_heisenberg_orbit(const Matrix& fiducial) {
  const std::size_t d = fiducial.rows();
  if (d < 1 || fiducial.cols() != 1) throw ShapeError("weyl_heisenberg_orbit: need a d x 1 vector");
  std::vector<Scalar> v = fiducial.column(0);
  double nrm = 0.0;
  for (const auto& z : v) nrm += std::norm(z);
  nrm = std::sqrt(nrm);
  if (nrm == 0.0) throw ZeroColumnError("weyl_heisenberg_orbit: zero fiducial");
  // d^2 unit vectors give UU* = d I.
  const double scale = 1.0 / (nrm * std::sqrt(static_cast<double>(d)));
  Matrix u(d, d * d, Field::Complex);
  std::size_t col = 0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const auto w = detail::wh_apply(v, a, b);
      for (std::size_t k = 0; k < d; ++k) u(k, col) = w[k] * scale;
      ++col;
    }
  return FrameMatrix(std::move(u));
}

/// SIC fiducial in C^d: exact for d = 2, 3; otherwise a seeded multi-start
/// Levenberg-Marquardt search on the orbit overlaps, stopped at the first start
/// whose orbit has coherence spread below config.tol. Throws
/// SearchExhaustedError (carrying the best vector found) when every start fails.
inline SicFiducial sic_fiducial(std::size_t d, const SicSearchConfig& config = {}) {
  if (d < 2 || d > 8) throw DomainError("sic_fiducial: need 2 <= d <= 8");
  SicFiducial out;
  out.d = d;
  out.v = Matrix(d, 1, Field::Complex);
  if (d == 2) {
    const double s3 = 1.0 / std::sqrt(3.0);
    out.v(0, 0) = std::sqrt((1.0 + s3) / 2.0);
    out.v(1, 0) = std::polar(std::sqrt((1.0 - s3) / 2.0), std::numbers::pi / 4.0);
  } else if (d == 3) {
    out.v(1, 0) = 1.0 / std::sqrt(2.0);
    out.v(2, 0) = -1.0 / std::sqrt(2.0);
  }
  if (d <= 3) {
    out.achieved_spread = coherence_profile(weyl_heisenberg_orbit(out.v)).offdiag_spread;
    return out;
  }
  double best_spread = std::numeric_limits<double>::infinity();
  SicFiducial best = out;
  for (std::size_t s = 0; s < config.starts; ++s) {
    std::mt19937_64 rng(config.seed * 1000003ULL + s);
    std::normal_distribution<double> normal;
    std::vector<Scalar> v(d);
    for (auto& z : v) z = {normal(rng), normal(rng)};
    v = detail::sic_polish(std::move(v), config.max_iter);
    Matrix cand(d, 1, Field::Complex);
    for (std::size_t k = 0; k < d; ++k) cand(k, 0) = v[k];
    const double spread = coherence_profile(weyl_heisenberg_orbit(cand)).offdiag_spread;
    if (spread < best_spread) {
      best_spread = spread;
      best.v = cand;
      best.achieved_spread = spread;
      best.start_index = s;
    }
    if (spread < config.tol) return best;
  }
  best.exhausted = true;
  throw SearchExhaustedError("sic_fiducial: no start reached spread " + std::to_string(config.tol) +
                                 " in dimension " + std::to_string(d),
                             best);
}

}  // namespace projconst
