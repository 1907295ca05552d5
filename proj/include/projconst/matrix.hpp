#pragma once

// Small dense linear algebra over R and C. Every matrix carries a field tag;
// entries are always stored as std::complex<double> and REAL matrices keep a
// zero imaginary part, so one code path serves both fields.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "projconst/errors.hpp"

namespace projconst {

using Scalar = std::complex<double>;

enum class Field { Real, Complex };

inline std::string_view to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

inline Field parse_field(std::string_view s) {
  if (s == "real" || s == "R") return Field::Real;
  if (s == "complex" || s == "C") return Field::Complex;
  throw DomainError("unknown field '" + std::string(s) + "' (expected real|complex)");
}

/// Row-major dense matrix tagged with its scalar field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Field field = Field::Real)
      : rows_(rows), cols_(cols), field_(field), data_(rows * cols) {}

  /// Builds a matrix from nested rows; throws ShapeError on ragged input and
  /// FieldError when a REAL matrix is given a non-real entry.
  static Matrix from_rows(std::initializer_list<std::initializer_list<Scalar>> rows,
                          Field field = Field::Real) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix out(r, c, field);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw ShapeError("from_rows: ragged rows");
      std::size_t j = 0;
      for (const auto& v : row) out(i, j++) = v;
      ++i;
    }
    out.check_field();
    return out;
  }

  static Matrix identity(std::size_t n, Field field = Field::Real) {
    Matrix out(n, n, field);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Field field() const noexcept { return field_; }
  bool is_real() const noexcept { return field_ == Field::Real; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Scalar> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const Scalar> data() const noexcept { return data_; }
  std::span<Scalar> data() noexcept { return data_; }

  std::vector<Scalar> column(std::size_t j) const {
    std::vector<Scalar> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  /// Throws FieldError if a REAL matrix holds an entry with nonzero imaginary part.
  void check_field() const {
    if (field_ != Field::Real) return;
    for (const auto& z : data_)
      if (z.imag() != 0.0) throw FieldError("REAL matrix holds a non-real entry");
  }

  /// Reinterprets a REAL matrix as COMPLEX (no-op for COMPLEX).
  Matrix as_complex() const {
    Matrix out = *this;
    out.field_ = Field::Complex;
    return out;
  }

  Matrix& operator*=(Scalar s) {
    if (field_ == Field::Real && s.imag() != 0.0)
      throw FieldError("complex scaling of a REAL matrix");
    for (auto& z : data_) z *= s;
    return *this;
  }
  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }

  friend Matrix operator*(Matrix a, Scalar s) { return a *= s; }
  friend Matrix operator*(Scalar s, Matrix a) { return a *= s; }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  bool operator==(const Matrix&) const = default;

 private:
  void require_same_shape(const Matrix& o, const char* where) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw ShapeError(std::string(where) + ": shape mismatch");
    if (field_ != o.field_) throw FieldError(std::string(where) + ": field mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_ = Field::Real;
  std::vector<Scalar> data_;
};

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("multiply: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  if (a.field() != b.field()) throw FieldError("multiply: field mismatch");
  Matrix out(a.rows(), b.cols(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto orow = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar aik = a(i, k);
      if (aik == 0.0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

/// Conjugate transpose.
inline Matrix adjoint(const Matrix& a) {
  Matrix out(a.cols(), a.rows(), a.field());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

inline double max_abs(const Matrix& a) {
  double m = 0.0;
  for (const auto& z : a.data()) m = std::max(m, std::abs(z));
  return m;
}

inline double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (const auto& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

inline Scalar trace(const Matrix& a) {
  if (a.rows() != a.cols()) throw ShapeError("trace: matrix not square");
  Scalar s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

/// Max-entry deviation between two equally shaped matrices.
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

/// Entrywise modulus, returned as a REAL matrix.
inline Matrix entrywise_abs(const Matrix& a) {
  Matrix out(a.rows(), a.cols(), Field::Real);
  for (std::size_t k = 0; k < a.data().size(); ++k) out.data()[k] = std::abs(a.data()[k]);
  return out;
}

inline Scalar dot(std::span<const Scalar> x, std::span<const Scalar> y) {
  Scalar s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += std::conj(x[k]) * y[k];
  return s;
}

/// Gaussian random matrix; COMPLEX entries have independent real and
/// imaginary parts.
template <class Rng>
Matrix gaussian_matrix(std::size_t rows, std::size_t cols, Field field, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix out(rows, cols, field);
  for (auto& z : out.data()) {
    const double re = normal(rng);
    const double im = field == Field::Complex ? normal(rng) : 0.0;
    z = {re, im};
  }
  return out;
}

/// Orthonormalizes the rows of an m x N matrix (m <= N) by modified
/// Gram-Schmidt with one reorthogonalization pass. Each output row is then
/// multiplied by a unit phase so that its first entry of modulus above
/// 1e-12 is real and positive. The row space is preserved.
inline Matrix orthonormalize_rows(const Matrix& a, double rank_tol = 1e-8) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m > n) throw ShapeError("orthonormalize_rows: more rows than columns");
  Matrix q = a;
  double largest = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (const auto& z : a.row(i)) s += std::norm(z);
    largest = std::max(largest, std::sqrt(s));
  }
  if (largest == 0.0) throw RankError("orthonormalize_rows: zero matrix");
  for (std::size_t i = 0; i < m; ++i) {
    auto ri = q.row(i);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < i; ++k) {
        auto rk = q.row(k);
        const Scalar c = dot(rk, ri);
        for (std::size_t j = 0; j < n; ++j) ri[j] -= c * rk[j];
      }
    }
    double s = 0.0;
    for (const auto& z : ri) s += std::norm(z);
    const double norm = std::sqrt(s);
    if (norm <= rank_tol * largest)
      throw RankError("orthonormalize_rows: input is numerically rank deficient (row " +
                      std::to_string(i) + ")");
    Scalar phase = 1.0;
    for (const auto& z : ri) {
      if (std::abs(z) > 1e-12 * norm) {
        phase = std::conj(z) / std::abs(z);
        break;
      }
    }
    if (a.is_real()) phase = phase.real() < 0 ? -1.0 : 1.0;
    for (auto& z : ri) z *= phase / norm;
    if (a.is_real())
      for (auto& z : ri) z = z.real();
  }
  return q;
}

struct Eigenpair {
  double value = 0.0;
  Matrix vector;  // N x 1, REAL, entrywise nonnegative, unit norm
};

namespace detail {

struct PowerRun {
  double value = 0.0;
  std::vector<double> x;
  bool converged = false;
  std::size_t iterations = 0;
};

// Shifted power iteration x <- (A + sI)x on a symmetric nonnegative matrix
// given as a dense real row-major array. The shift keeps -lambda_max (bipartite
// patterns) from competing with the Perron root.
inline PowerRun power_run(std::span<const double> a, std::size_t n, std::vector<double> x,
                          double tol, std::size_t max_iter) {
  double amax = 0.0;
  double rowsum_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double rs = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      rs += a[i * n + j];
      amax = std::max(amax, a[i * n + j]);
    }
    rowsum_max = std::max(rowsum_max, rs);
  }
  const double shift = 0.1 * rowsum_max;
  PowerRun run;
  auto normalize = [](std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    s = std::sqrt(s);
    for (double& e : v) e /= s;
  };
  normalize(x);
  std::vector<double> y(n);
  double prev = -1.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * x[j];
      y[i] = s;
    }
    double rq = 0.0;
    for (std::size_t i = 0; i < n; ++i) rq += x[i] * y[i];
    double res = 0.0;
    for (std::size_t i = 0; i < n; ++i) res += (y[i] - rq * x[i]) * (y[i] - rq * x[i]);
    res = std::sqrt(res);
    run.value = rq;
    run.iterations = it + 1;
    if (std::abs(rq - prev) < tol && res <= tol * amax) {
      run.converged = true;
      break;
    }
    prev = rq;
    for (std::size_t i = 0; i < n; ++i) y[i] += shift * x[i];
    normalize(y);
    std::swap(x, y);
  }
  for (double& e : x) e = std::max(e, 0.0);
  normalize(x);
  run.x = std::move(x);
  return run;
}

}  // namespace detail

/// Perron root and nonnegative unit eigenvector of a real symmetric
/// entrywise-nonnegative matrix. Two seeded nonnegative starts are run and the
/// larger converged Rayleigh quotient wins.
inline Eigenpair dominant_eigenpair(const Matrix& a, double tol = 1e-13,
                                    std::size_t max_iter = 200000) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw ShapeError("dominant_eigenpair: matrix not square");
  std::vector<double> dense(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar z = a(i, j);
      if (z.imag() != 0.0) throw DomainError("dominant_eigenpair: non-real entry");
      if (z.real() < 0.0) throw DomainError("dominant_eigenpair: negative entry");
      if (std::abs(z.real() - a(j, i).real()) > 1e-12 * std::max(1.0, std::abs(z.real())))
        throw DomainError("dominant_eigenpair: matrix not symmetric");
      dense[i * n + j] = z.real();
    }
  Eigenpair out;
  out.vector = Matrix(n, 1, Field::Real);
  if (n == 0) return out;
  if (*std::max_element(dense.begin(), dense.end()) == 0.0) {
    for (std::size_t i = 0; i < n; ++i) out.vector(i, 0) = 1.0 / std::sqrt(double(n));
    return out;
  }
  detail::PowerRun best;
  bool have = false;
  for (unsigned seed : {1u, 2u}) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    std::vector<double> x(n);
    for (double& e : x) e = u(rng);
    auto run = detail::power_run(dense, n, std::move(x), tol, max_iter);
    if (!run.converged) continue;
    if (!have || run.value > best.value) {
      best = std::move(run);
      have = true;
    }
  }
  if (!have)
    throw ConvergenceError("dominant_eigenpair: no convergence in " + std::to_string(max_iter) +
                           " iterations");
  out.value = best.value;
  for (std::size_t i = 0; i < n; ++i) out.vector(i, 0) = best.x[i];
  return out;
}

/// Singular values (descending) by one-sided Jacobi on the columns of A or A*,
/// whichever has fewer columns. Equivalent to cyclic Jacobi on A*A without
/// forming the product, so small singular values keep their relative accuracy.
inline std::vector<double> singular_values(const Matrix& a) {
  Matrix w = a.cols() <= a.rows() ? a : adjoint(a);
  const std::size_t m = w.rows();
  const std::size_t n = w.cols();
  // Work column-major for contiguous column access.
  std::vector<std::vector<Scalar>> col(n, std::vector<Scalar>(m));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) col[j][i] = w(i, j);
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Scalar gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += std::norm(col[p][i]);
          beta += std::norm(col[q][i]);
          gamma += std::conj(col[p][i]) * col[q][i];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Scalar phase = gamma / g;  // a_q <- conj(phase) a_q makes <a_p,a_q> real
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const Scalar ap = col[p][i];
          const Scalar aq = std::conj(phase) * col[q][i];
          col[p][i] = c * ap - s * aq;
          col[q][i] = s * ap + c * aq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (const auto& z : col[j]) s += std::norm(z);
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

/// Number of singular values above rank_tol times the largest one.
inline std::size_t numerical_rank(const Matrix& a, double rank_tol = 1e-8) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  const auto sv = singular_values(a);
  if (sv.front() == 0.0) return 0;
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [&](double s) { return s > rank_tol * sv.front(); }));
}

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k belongs to values[k]
};

/// Full eigendecomposition of a real symmetric matrix by cyclic Jacobi.
inline SymmetricEigen symmetric_eigen(const Matrix& a, double tol = 1e-14) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw ShapeError("symmetric_eigen: matrix not square");
  if (!a.is_real()) throw FieldError("symmetric_eigen: REAL matrix required");
  std::vector<double> s(n * n), v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    v[i * n + i] = 1.0;
    for (std::size_t j = 0; j < n; ++j) s[i * n + j] = 0.5 * (a(i, j).real() + a(j, i).real());
  }
  double total = 0.0;
  for (double e : s) total += e * e;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += s[i * n + j] * s[i * n + j];
    if (off <= tol * tol * total) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = s[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (s[q * n + q] - s[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double skp = s[k * n + p], skq = s[k * n + q];
          s[k * n + p] = c * skp - sn * skq;
          s[k * n + q] = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double spk = s[p * n + k], sqk = s[q * n + k];
          s[p * n + k] = c * spk - sn * sqk;
          s[q * n + k] = sn * spk + c * sqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - sn * vkq;
          v[k * n + q] = sn * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return s[x * n + x] < s[y * n + y]; });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n, Field::Real);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = s[order[k] * n + order[k]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v[i * n + order[k]];
  }
  return out;
}

}  // namespace projconst
