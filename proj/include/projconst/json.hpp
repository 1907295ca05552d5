#pragma once

// JSON encodings of the report types (nlohmann::json). Doubles are written with
// round-trip precision, so parse(emit(r)) == r exactly.

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "projconst/bukhcox.hpp"
#include "projconst/frames.hpp"
#include "projconst/matrix.hpp"
#include "projconst/projection_constants.hpp"
#include "projconst/replication.hpp"
#include "projconst/version.hpp"

namespace projconst {

using json = nlohmann::json;

inline void to_json(json& j, Field f) { j = to_string(f); }
inline void from_json(const json& j, Field& f) { f = parse_field(j.get<std::string>()); }

inline void to_json(json& j, const Matrix& a) {
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    json rr = json::array(), ri = json::array();
    for (std::size_t c = 0; c < a.cols(); ++c) {
      rr.push_back(a(r, c).real());
      ri.push_back(a(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  j = {{"rows", a.rows()}, {"cols", a.cols()}, {"field", a.field()}, {"re", std::move(re)}};
  if (a.field() == Field::Complex) j["im"] = std::move(im);
}

inline void from_json(const json& j, Matrix& a) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto field = j.at("field").get<Field>();
  a = Matrix(rows, cols, field);
  const json& re = j.at("re");
  const bool has_im = field == Field::Complex;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      a(r, c) = {re.at(r).at(c).get<double>(), has_im ? j.at("im").at(r).at(c).get<double>() : 0.0};
}

inline void to_json(json& j, const FrameMatrix& f) { j = f.matrix(); }
inline void from_json(const json& j, FrameMatrix& f) {
  if (j.at("rows").get<std::size_t>() == 0) {
    f = FrameMatrix();
    return;
  }
  f = FrameMatrix(j.get<Matrix>());
}

inline void to_json(json& j, const WeightVector& w) { j = w.t; }
inline void from_json(const json& j, WeightVector& w) { w.t = j.get<std::vector<double>>(); }

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GoldenValue, exact, value, label)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(TightCheck, tight, alpha, residual)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CoherenceProfile, offdiag_max, offdiag_min, offdiag_spread, welch_value)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(EtfCertificate, ok, reasons, coherence, tightness)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(OptReport, mode, m, N, field, best_value, best_t, best_U, delta_bound, gap,
                                   starts, best_start, iterations, start_values, converged, seed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(EqualityReport, m, N, field, delta, uniform_value, perron_value,
                                   perron_uniform_deviation, uniform_matches, perron_matches, ok)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AuditLine, name, lhs, rhs, slack, pass)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RationalWeights, q, n)

namespace detail {

template <class T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

template <class T>
void get_opt(const json& j, const char* key, std::optional<T>& v) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) v.reset();
  else v = it->template get<T>();
}

}  // namespace detail

inline void to_json(json& j, const BoundReport& r) {
  j = {{"m", r.m}, {"N", r.N}, {"field", r.field}, {"delta", r.delta}, {"delta_exact", r.delta_exact},
       {"cap", r.cap}, {"global_bound", r.global_bound}};
  detail::put_opt(j, "welch", r.welch);
  detail::put_opt(j, "golden", r.golden);
}

inline void from_json(const json& j, BoundReport& r) {
  j.at("m").get_to(r.m);
  j.at("N").get_to(r.N);
  j.at("field").get_to(r.field);
  j.at("delta").get_to(r.delta);
  j.at("delta_exact").get_to(r.delta_exact);
  j.at("cap").get_to(r.cap);
  j.at("global_bound").get_to(r.global_bound);
  detail::get_opt(j, "welch", r.welch);
  detail::get_opt(j, "golden", r.golden);
}

inline void to_json(json& j, const ReplicationIdentity& r) {
  j = {{"lhs", r.lhs}, {"rhs", r.rhs}, {"columns", r.columns}, {"ok", r.ok}};
  detail::put_opt(j, "lhs_materialized", r.lhs_materialized);
}

inline void from_json(const json& j, ReplicationIdentity& r) {
  j.at("lhs").get_to(r.lhs);
  j.at("rhs").get_to(r.rhs);
  j.at("columns").get_to(r.columns);
  j.at("ok").get_to(r.ok);
  detail::get_opt(j, "lhs_materialized", r.lhs_materialized);
}

inline void to_json(json& j, const WitnessReport& r) {
  j = {{"lambda", r.lambda},
       {"eps", r.eps},
       {"weights", r.weights},
       {"columns", r.columns},
       {"weight_error", r.weight_error},
       {"norm_deviation", r.norm_deviation},
       {"value_error", r.value_error},
       {"witness", r.witness},
       {"lower_bound", r.lower_bound},
       {"identity_ok", r.identity_ok},
       {"bound_ok", r.bound_ok}};
  detail::put_opt(j, "witness_materialized", r.witness_materialized);
}

inline void from_json(const json& j, WitnessReport& r) {
  j.at("lambda").get_to(r.lambda);
  j.at("eps").get_to(r.eps);
  j.at("weights").get_to(r.weights);
  j.at("columns").get_to(r.columns);
  j.at("weight_error").get_to(r.weight_error);
  j.at("norm_deviation").get_to(r.norm_deviation);
  j.at("value_error").get_to(r.value_error);
  j.at("witness").get_to(r.witness);
  j.at("lower_bound").get_to(r.lower_bound);
  j.at("identity_ok").get_to(r.identity_ok);
  j.at("bound_ok").get_to(r.bound_ok);
  detail::get_opt(j, "witness_materialized", r.witness_materialized);
}

inline void to_json(json& j, const CentralAudit& a) {
  j = {{"phi", a.phi}, {"rank_g", a.rank_g}, {"cap", a.cap}, {"phi_feasible", a.phi_feasible},
       {"lines", a.lines}, {"all_pass", a.all_pass()}};
}

inline void from_json(const json& j, CentralAudit& a) {
  j.at("phi").get_to(a.phi);
  j.at("rank_g").get_to(a.rank_g);
  j.at("cap").get_to(a.cap);
  j.at("phi_feasible").get_to(a.phi_feasible);
  j.at("lines").get_to(a.lines);
}

inline void to_json(json& j, const RankAudit& a) {
  j = {{"rank_a", a.rank_a}, {"rank_g", a.rank_g}, {"lines", a.lines}, {"all_pass", a.all_pass()}};
}

inline void from_json(const json& j, RankAudit& a) {
  j.at("rank_a").get_to(a.rank_a);
  j.at("rank_g").get_to(a.rank_g);
  j.at("lines").get_to(a.lines);
}

// ---------------------------------------------------------------------------

struct RunManifest {
  std::string command;
  json config = json::object();  // every flag and tolerance in effect
  std::uint64_t seed = 0;
  std::string version = kVersion;
  double wall_time_s = 0.0;
  std::vector<std::string> outputs;

  bool operator==(const RunManifest&) const = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(RunManifest, command, config, seed, version, wall_time_s, outputs)

/// {"manifest": ..., "report": ...}
template <class Report>
json envelope(const RunManifest& manifest, const Report& report) {
  return {{"manifest", manifest}, {"report", report}};
}

inline json to_json_config(const OptConfig& c) {
  return {{"starts", c.starts},       {"seed", c.seed},         {"eps_init", c.eps_init},
          {"eps_final", c.eps_final}, {"eps_factor", c.eps_factor}, {"max_outer", c.max_outer},
          {"max_linesearch", c.max_linesearch}, {"tol", c.tol}, {"threads", c.threads}};
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace projconst
