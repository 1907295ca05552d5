#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's numerical kernels.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "projconst/frames.hpp"
#include "projconst/matrix.hpp"

namespace oracle {

using projconst::Field;
using projconst::FrameMatrix;
using projconst::Matrix;
using projconst::Scalar;

inline Matrix triple_loop(const Matrix& a, const Matrix& b) {
  const Field f = a.field() == Field::Complex || b.field() == Field::Complex ? Field::Complex : Field::Real;
  Matrix c(a.rows(), b.cols(), f);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Scalar s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

// Gram entries straight from the column inner products.
inline Matrix gram(const Matrix& u) {
  Matrix g(u.cols(), u.cols(), u.field());
  for (std::size_t i = 0; i < u.cols(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) {
      Scalar s = 0.0;
      for (std::size_t k = 0; k < u.rows(); ++k) s += std::conj(u(k, i)) * u(k, j);
      g(i, j) = s;
    }
  return g;
}

inline double abs_sum(const Matrix& u, const std::vector<double>& t) {
  const Matrix g = gram(u);
  double s = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) s += t[i] * t[j] * std::abs(g(i, j));
  return s;
}

// Exact rank of an integer matrix by fraction-free (Bareiss) elimination.
inline std::size_t bareiss_rank(std::vector<std::vector<std::int64_t>> a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t rank = 0;
  std::int64_t prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k)
        a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

// det(A - x I) by Gaussian elimination with partial pivoting.
inline double char_poly(const Matrix& a, double x) {
  const std::size_t n = a.rows();
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = a(i, j).real() - (i == j ? x : 0.0);
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r * n + c]) > std::abs(m[p * n + c])) p = r;
    if (m[p * n + c] == 0.0) return 0.0;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[p * n + k], m[c * n + k]);
      det = -det;
    }
    det *= m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / m[c * n + c];
      for (std::size_t k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
    }
  }
  return det;
}

// Roots of det(A - x I) for a real symmetric A with simple spectrum: sign
// changes on a fine grid over the Gershgorin interval, then bisection.
inline std::vector<double> eigenvalues_by_bisection(const Matrix& a, std::size_t grid = 20000) {
  const std::size_t n = a.rows();
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += std::abs(a(i, j));
    r = std::max(r, s);
  }
  const double lo = -r - 1.0, hi = r + 1.0;
  std::vector<double> roots;
  double x0 = lo, f0 = char_poly(a, x0);
  for (std::size_t k = 1; k <= grid; ++k) {
    const double x1 = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid);
    const double f1 = char_poly(a, x1);
    if (f0 == 0.0) roots.push_back(x0);
    else if (f0 * f1 < 0.0) {
      double a0 = x0, b0 = x1, fa = f0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a0 + b0);
        const double fm = char_poly(a, mid);
        if (fa * fm <= 0.0) b0 = mid;
        else {
          a0 = mid;
          fa = fm;
        }
      }
      roots.push_back(0.5 * (a0 + b0));
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

// max over nonnegative unit t of t^T A t, by sampling.
inline double sampled_quadratic_max(const Matrix& a, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = a.rows();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> t(n);
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    double nrm = 0.0;
    for (auto& e : t) {
      e = std::abs(normal(rng));
      nrm += e * e;
    }
    nrm = std::sqrt(nrm);
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v += t[i] * t[j] * a(i, j).real();
    best = std::max(best, v / (nrm * nrm));
  }
  return best;
}

inline Matrix abs_gram(const Matrix& u) {
  Matrix g = gram(u);
  Matrix out(g.rows(), g.cols(), Field::Real);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) out(i, j) = std::abs(g(i, j));
  return out;
}

// Random Parseval frame via classical Gram-Schmidt on Gaussian rows.
inline Matrix random_parseval(std::size_t m, std::size_t n, Field field, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix u(m, n, field);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) u(i, j) = {normal(rng), field == Field::Complex ? normal(rng) : 0.0};
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < i; ++k) {
        Scalar ip = 0.0;
        for (std::size_t j = 0; j < n; ++j) ip += std::conj(u(k, j)) * u(i, j);
        for (std::size_t j = 0; j < n; ++j) u(i, j) -= ip * u(k, j);
      }
    double nrm = 0.0;
    for (std::size_t j = 0; j < n; ++j) nrm += std::norm(u(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t j = 0; j < n; ++j) u(i, j) /= nrm;
  }
  return u;
}

// delta_{m,N} straight from its definition.
inline double delta(double m, double n) { return (m / n) * (1.0 + std::sqrt((n - 1.0) * (n - m) / m)); }

}  // namespace oracle
