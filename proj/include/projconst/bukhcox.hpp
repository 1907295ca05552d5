#pragma once

// Executable audit of the lift-matrix argument bounding the equal-weight
// objective. For a Parseval frame with nonzero columns u_i (norms n_i):
//   L_i = n_i^{-3/2} u_i u_i*,   G_ij = <L_i, L_j>_F = n_i^{-3/2} n_j^{-3/2} |<u_i,u_j>|^2,
// and for any phi > 0
//   2 phi sum|U*U| <= sum |<u_i,u_j>|^2/(n_i n_j) + (phi^2 - (1-phi)^2/rk G)(sum n_i)^2.
// Each inequality of the chain becomes one AuditLine.

#include <cmath>
#include <string>
#include <vector>

#include "projconst/errors.hpp"
#include "projconst/frames.hpp"
#include "projconst/matrix.hpp"
#include "projconst/projection_constants.hpp"

namespace projconst {

struct AuditLine {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool pass = false;

  bool operator==(const AuditLine&) const = default;
};

inline AuditLine audit_le(std::string name, double lhs, double rhs, double rel_tol = 1e-9) {
  AuditLine l{std::move(name), lhs, rhs, rhs - lhs, false};
  l.pass = lhs <= rhs + rel_tol * std::max(1.0, std::abs(rhs));
  return l;
}

/// Removes columns with norm below tol. The survivors still form a tight frame
/// with the same constant, and the equal-weight objective does not decrease.
inline FrameMatrix drop_zero_columns(const FrameMatrix& f, double tol = 1e-12) {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < f.N(); ++j)
    if (f.column_norm(j) >= tol) keep.push_back(j);
  if (keep.size() < f.m())
    throw RankError("drop_zero_columns: only " + std::to_string(keep.size()) +
                    " nonzero columns for m=" + std::to_string(f.m()));
  const auto before = is_tight(f);
  if (!before.tight) throw NotTightError("drop_zero_columns: input frame is not tight");
  Matrix u(f.m(), keep.size(), f.field());
  for (std::size_t c = 0; c < keep.size(); ++c)
    for (std::size_t i = 0; i < f.m(); ++i) u(i, c) = f.matrix()(i, keep[c]);
  FrameMatrix out(std::move(u));
  const auto after = is_tight(out);
  if (!after.tight || std::abs(after.alpha - before.alpha) > 1e-9 * before.alpha)
    throw NotTightError("drop_zero_columns: tightness constant changed");
  const double mu_before = mu_objective(normalize_to_parseval(f));
  const double mu_after = mu_objective(normalize_to_parseval(out));
  if (mu_after < mu_before - 1e-12)
    throw DomainError("drop_zero_columns: equal-weight objective decreased");
  return out;
}

struct LiftSystem {
  std::vector<Matrix> L;      // m x m, L_i = n_i^{-3/2} u_i u_i*
  Matrix G;                   // N x N, REAL
  std::vector<double> norms;  // n_i = |u_i|
};

/// Builds the lifts and their Frobenius Gram matrix, then checks the
/// structural identities (G_ij = tr(L_i L_j), tr L_i = n_i^{1/2}, and the row
/// identity sum_k n_k^{3/2} G_ik = n_i^{1/2}). Violations throw DomainError.
inline LiftSystem build_lift_system(const FrameMatrix& f, double zero_tol = 1e-12) {
  require_parseval(f, 1e-9, "build_lift_system");
  const std::size_t m = f.m(), n = f.N();
  LiftSystem s;
  s.norms = f.column_norms();
  for (std::size_t i = 0; i < n; ++i)
    if (s.norms[i] < zero_tol) throw ZeroColumnError("build_lift_system: column " + std::to_string(i) + " is zero");
  const Matrix& u = f.matrix();
  s.L.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix li(m, m, f.field());
    const double c = std::pow(s.norms[i], -1.5);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) li(a, b) = c * u(a, i) * std::conj(u(b, i));
    s.L.push_back(std::move(li));
  }
  const Matrix gu = gram(f);
  s.G = Matrix(n, n, Field::Real);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s.G(i, j) = std::pow(s.norms[i], -1.5) * std::pow(s.norms[j], -1.5) * std::norm(gu(i, j));

  for (std::size_t i = 0; i < n; ++i) {
    const double tr = trace(s.L[i]).real();
    if (std::abs(tr - std::sqrt(s.norms[i])) > 1e-12 * std::max(1.0, tr))
      throw DomainError("build_lift_system: trace of L_" + std::to_string(i) + " is off");
    double row = 0.0;
    for (std::size_t k = 0; k < n; ++k) row += std::pow(s.norms[k], 1.5) * s.G(i, k).real();
    if (std::abs(row - std::sqrt(s.norms[i])) > 1e-10 * std::max(1.0, row))
      throw DomainError("build_lift_system: row identity fails at " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      Scalar t = 0.0;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) t += s.L[i](a, b) * s.L[j](b, a);
      const double gij = s.G(i, j).real();
      if (std::abs(t - gij) > 1e-12 * std::max(1.0, gij))
        throw DomainError("build_lift_system: G_ij differs from tr(L_i L_j)");
    }
  }
  return s;
}

/// The per-field phi for which the chain closes at delta_{m,cap}; it equals the
/// Welch value of a maximal ETF when one exists.
inline double default_phi(std::uint64_t m, Field field) {
  const double md = static_cast<double>(m);
  return field == Field::Real ? 1.0 / std::sqrt(md + 2.0) : 1.0 / std::sqrt(md + 1.0);
}

struct MuUpperBound {
  double value = 0.0;
  double phi = 0.0;  // the phi that turns the audited chain into this bound
  std::uint64_t cap = 0;
  bool trivial = false;
};

/// Bound on mu_K(m, N) valid for every N: delta_{m,cap}, reached by the chain
/// with phi = 1/sqrt(m+2) (real) or 1/sqrt(m+1) (complex).
inline MuUpperBound mu_upper_bound(std::uint64_t m, Field field) {
  if (m < 1) throw DomainError("mu_upper_bound: need m >= 1");
  MuUpperBound b;
  b.cap = cardinality_cap(m, field);
  b.phi = default_phi(m, field);
  if (m == 1) {
    b.value = 1.0;
    b.trivial = true;
    return b;
  }
  b.value = delta_bound(m, b.cap);
  return b;
}

struct CentralAudit {
  double phi = 0.0;
  std::size_t rank_g = 0;
  std::uint64_t cap = 0;
  bool phi_feasible = false;  // phi^2 - (1-phi)^2 / rk(G) >= 0
  std::vector<AuditLine> lines;

  bool all_pass() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return true;
  }
};

/// Evaluates both sides of the central inequality, the two auxiliary bounds
/// (sum |<u_i,u_j>|^2/(n_i n_j) <= N and (sum n_i)^2 <= N m), the rank cap on
/// rk(G), and, when phi is feasible, the resulting bound in N and m.
inline CentralAudit audit_central_inequality(const FrameMatrix& f, double phi, double rank_tol = 1e-8) {
  if (!(phi > 0.0)) throw DomainError("audit_central_inequality: phi must be > 0");
  const LiftSystem lifts = build_lift_system(f);
  const std::size_t n = f.N();
  const double nd = static_cast<double>(n), md = static_cast<double>(f.m());
  const Matrix gu = gram(f);
  double abs_sum = 0.0, cs_sum = 0.0, norm_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    norm_sum += lifts.norms[i];
    for (std::size_t j = 0; j < n; ++j) {
      abs_sum += std::abs(gu(i, j));
      cs_sum += std::norm(gu(i, j)) / (lifts.norms[i] * lifts.norms[j]);
    }
  }
  CentralAudit a;
  a.phi = phi;
  a.rank_g = numerical_rank(lifts.G, rank_tol);
  a.cap = cardinality_cap(f.m(), f.field());
  const double rk = static_cast<double>(a.rank_g);
  const double coeff = phi * phi - (1.0 - phi) * (1.0 - phi) / rk;
  a.phi_feasible = coeff >= 0.0;
  a.lines.push_back(audit_le("central", 2.0 * phi * abs_sum, cs_sum + coeff * norm_sum * norm_sum));
  a.lines.push_back(audit_le("cauchy_schwarz_le_N", cs_sum, nd));
  a.lines.push_back(audit_le("norm_sum_sq_le_Nm", norm_sum * norm_sum, nd * md));
  a.lines.push_back(audit_le("rank_G_le_cap", rk, static_cast<double>(a.cap)));
  if (a.phi_feasible)
    a.lines.push_back(audit_le("central_in_N_m", 2.0 * phi * abs_sum, nd + coeff * nd * md));
  a.lines.push_back(audit_le("mu_le_upper_bound", abs_sum / nd, mu_upper_bound(f.m(), f.field()).value, 1e-8));
  return a;
}

struct RankAudit {
  std::size_t rank_a = 0;
  std::size_t rank_g = 0;
  std::vector<AuditLine> lines;

  bool all_pass() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return true;
  }
};

/// A_ij = a G_ij - b n_i^{1/2} n_j^{1/2} has rank <= rk(G), and
/// tr(AA*) >= (tr A)^2 / rk(A).
inline RankAudit audit_rank_structure(const FrameMatrix& f, double a, double b, double rank_tol = 1e-8) {
  const LiftSystem lifts = build_lift_system(f);
  const std::size_t n = f.N();
  Matrix am(n, n, Field::Real);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      am(i, j) = a * lifts.G(i, j).real() - b * std::sqrt(lifts.norms[i] * lifts.norms[j]);
  RankAudit r;
  r.rank_a = numerical_rank(am, rank_tol);
  r.rank_g = numerical_rank(lifts.G, rank_tol);
  r.lines.push_back(audit_le("rank_A_le_rank_G", static_cast<double>(r.rank_a), static_cast<double>(r.rank_g)));
  const double tr = trace(am).real();
  const double fro2 = std::pow(frobenius_norm(am), 2);
  const double rhs = r.rank_a == 0 ? 0.0 : tr * tr / static_cast<double>(r.rank_a);
  r.lines.push_back(audit_le("trace_rank", rhs, fro2));
  return r;
}

}  // namespace projconst
