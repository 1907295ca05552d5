// projconst: command-line front end.
//
//   projconst bounds -m 2 --field real [--csv]
//   projconst lambda -m 2 -N 3 [--starts 32 --seed 0 ...] [-o report.json]
//   projconst mu -m 2 -N 4 --field complex
//   projconst witness -m 2 -N 3 --eps 1e-3
//   projconst construct real-max 7 -o etf7.frame
//   projconst certify etf7.frame
//   projconst replicate etf7.frame --counts 1,2,1,...
//   projconst audit-bukhcox --random 3 7 20 0
//   projconst reproduce [--quick] [--policy data/reproduce_policy.conf]

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "projconst.hpp"

#ifndef PROJCONST_DEFAULT_DATA
#define PROJCONST_DEFAULT_DATA "data"
#endif

using namespace projconst;
namespace fs = std::filesystem;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;

struct Output {
  std::string path;  // empty: stdout

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
  }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Search options shared by lambda, mu and witness.
struct SearchFlags {
  std::string config_path;
  std::optional<std::size_t> starts, max_outer, max_linesearch, threads;
  std::optional<std::uint64_t> seed;
  std::optional<double> eps_init, eps_final, eps_factor, tol;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "key = value file with search settings")->check(CLI::ExistingFile);
    app->add_option("--starts", starts, "random starts (default 32)");
    app->add_option("--seed", seed, "base seed (default 0)");
    app->add_option("--eps-init", eps_init, "initial smoothing (default 1e-1)");
    app->add_option("--eps-final", eps_final, "final smoothing (default 1e-8)");
    app->add_option("--eps-factor", eps_factor, "smoothing decay per stage (default 0.5)");
    app->add_option("--max-outer", max_outer, "ascent iterations per stage (default 1000)");
    app->add_option("--max-linesearch", max_linesearch, "backtracking steps (default 30)");
    app->add_option("--tol", tol, "stationarity tolerance (default 1e-12)");
    app->add_option("--threads", threads, "worker threads, 0 = all cores (default 0)");
  }

  // File first, flags override.
  OptConfig resolve() const {
    OptConfig cfg;
    if (!config_path.empty()) {
      const auto unused = io::apply_opt_config(io::read_key_values_file(config_path), cfg);
      for (const auto& k : unused) std::cerr << "warning: unknown config key '" << k << "' ignored\n";
    }
    if (starts) cfg.starts = *starts;
    if (seed) cfg.seed = *seed;
    if (eps_init) cfg.eps_init = *eps_init;
    if (eps_final) cfg.eps_final = *eps_final;
    if (eps_factor) cfg.eps_factor = *eps_factor;
    if (max_outer) cfg.max_outer = *max_outer;
    if (max_linesearch) cfg.max_linesearch = *max_linesearch;
    if (tol) cfg.tol = *tol;
    if (threads) cfg.threads = *threads;
    io::apply_opt_config({}, cfg);  // validates
    return cfg;
  }
};

template <class T>
std::vector<T> parse_list(const std::string& s) {
  std::vector<T> out;
  std::string tok;
  std::stringstream ss(s);
  while (std::getline(ss, tok, ',')) {
    io::ConfigEntry e{std::string(io::detail::trim(tok)), 0};
    out.push_back(io::detail::parse_value<T>("list entry", e));
  }
  return out;
}

std::vector<double> read_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::vector<double> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    for (auto tok : io::detail::split_ws(io::detail::strip_comment(line))) {
      double v;
      if (!io::detail::parse_double(tok, v)) throw FormatError(no, "bad weight '" + std::string(tok) + "'");
      out.push_back(v);
    }
  }
  return out;
}

std::string data_dir() {
  if (const char* env = std::getenv("PROJCONST_DATA"); env && *env) return env;
  return PROJCONST_DEFAULT_DATA;
}

// PROJCONST_DATA may name the file itself or its directory.
std::optional<std::string> seidel_276_path() {
  const fs::path p = data_dir();
  if (fs::is_regular_file(p)) return p.string();
  if (fs::is_regular_file(p / "seidel_276.txt")) return (p / "seidel_276.txt").string();
  return std::nullopt;
}

FrameMatrix random_parseval(std::size_t m, std::size_t n, Field field, std::mt19937_64& rng) {
  return FrameMatrix(orthonormalize_rows(gaussian_matrix(m, n, field, rng)));
}

// ---------------------------------------------------------------------------

int cmd_bounds(std::uint64_t m, std::optional<std::uint64_t> n, Field field, bool csv, const Output& out) {
  Stopwatch sw;
  const auto r = bound_report(m, n, field);
  if (csv) {
    std::ostringstream os;
    os.precision(17);
    os << "m,N,field,delta,delta_exact,welch,cap,global_bound,golden\n";
    os << r.m << ',' << r.N << ',' << to_string(r.field) << ',' << r.delta << ',' << r.delta_exact << ',';
    if (r.welch) os << *r.welch;
    os << ',' << r.cap << ',' << r.global_bound << ',' << (r.golden ? r.golden->exact : "") << '\n';
    out.write(os.str());
    return 0;
  }
  RunManifest man;
  man.command = "bounds";
  man.config = {{"m", m}, {"N", n ? json(*n) : json(nullptr)}, {"field", field}};
  man.wall_time_s = sw.seconds();
  if (!out.path.empty()) man.outputs.push_back(out.path);
  out.write(dump(envelope(man, r)));
  return 0;
}

int cmd_search(const std::string& mode, std::uint64_t m, std::uint64_t n, Field field, const SearchFlags& flags,
               const Output& out) {
  const OptConfig cfg = flags.resolve();
  Stopwatch sw;
  const auto r = mode == "lambda" ? lambda_search(m, n, field, cfg) : mu_search(m, n, field, cfg);
  RunManifest man;
  man.command = mode;
  man.config = to_json_config(cfg);
  man.config["m"] = m;
  man.config["N"] = n;
  man.config["field"] = field;
  man.seed = cfg.seed;
  man.wall_time_s = sw.seconds();
  if (!out.path.empty()) man.outputs.push_back(out.path);
  out.write(dump(envelope(man, r)));
  std::cerr << mode << "(" << m << "," << n << "," << to_string(field) << ") = " << std::setprecision(12)
            << r.best_value << "  delta = " << r.delta_bound << "  gap = " << r.gap << "\n";
  return 0;
}

int cmd_witness(std::uint64_t m, std::uint64_t n, Field field, double eps, std::int64_t materialize_limit,
                const SearchFlags& flags, const Output& out) {
  const OptConfig cfg = flags.resolve();
  Stopwatch sw;
  const auto r = lambda_to_mu_witness(m, n, field, eps, cfg, materialize_limit);
  RunManifest man;
  man.command = "witness";
  man.config = to_json_config(cfg);
  man.config["m"] = m;
  man.config["N"] = n;
  man.config["field"] = field;
  man.config["eps"] = eps;
  man.seed = cfg.seed;
  man.wall_time_s = sw.seconds();
  if (!out.path.empty()) man.outputs.push_back(out.path);
  out.write(dump(envelope(man, r)));
  return 0;
}

int cmd_construct(const std::string& family, std::uint64_t m, Field field, const std::string& seidel,
                  const SicSearchConfig& sic, std::string path) {
  Stopwatch sw;
  FrameMatrix f;
  json extra = json::object();
  if (family == "simplex") {
    f = simplex_etf(m, field);
  } else if (family == "real-max") {
    if (!seidel.empty()) {
      f = seidel_to_etf(io::read_seidel_file(seidel));
      if (f.m() != m)
        throw UnsupportedError("Seidel file yields m=" + std::to_string(f.m()) + ", not " + std::to_string(m));
    } else {
      f = real_maximal_etf(m);
    }
  } else if (family == "sic") {
    const auto fid = sic_fiducial(m, sic);
    f = weyl_heisenberg_orbit(fid.v);
    extra = {{"achieved_spread", fid.achieved_spread}, {"start_index", fid.start_index}};
  } else {
    throw UnsupportedError("unknown family '" + family + "' (simplex, real-max, sic)");
  }
  if (path.empty()) path = family + "-" + std::to_string(m) + ".frame";
  io::write_frame_file(path, f);
  const auto cert = certify_etf_report(f);
  RunManifest man;
  man.command = "construct";
  man.config = {{"family", family}, {"m", m}, {"field", f.field()}, {"seidel", seidel},
                {"sic_tol", sic.tol}, {"sic_starts", sic.starts}};
  man.seed = sic.seed;
  man.wall_time_s = sw.seconds();
  man.outputs.push_back(path);
  json rep = {{"m", f.m()}, {"N", f.N()}, {"field", f.field()}, {"certificate", cert}};
  if (!extra.empty()) rep["search"] = extra;
  std::cout << dump(envelope(man, rep));
  return 0;
}

int cmd_certify(const std::string& path, double tol, double value_tol, const Output& out) {
  Stopwatch sw;
  const auto f = io::read_frame_file(path);
  const auto cert = certify_etf_report(f, tol);
  json rep = {{"m", f.m()}, {"N", f.N()}, {"field", f.field()}, {"certificate", cert}, {"equality", nullptr}};
  if (cert.ok) rep["equality"] = certify_equality(f, tol, value_tol);
  RunManifest man;
  man.command = "certify";
  man.config = {{"input", path}, {"etf_tol", tol}, {"value_tol", value_tol}};
  man.wall_time_s = sw.seconds();
  if (!out.path.empty()) man.outputs.push_back(out.path);
  out.write(dump(envelope(man, rep)));
  return 0;
}

int cmd_replicate(const std::string& path, const std::string& counts, std::int64_t q, const std::string& weights,
                  const std::string& weights_file, double eps, std::int64_t max_columns,
                  std::int64_t materialize_limit, const std::string& frame_out, const Output& out) {
  Stopwatch sw;
  const auto f = io::read_frame_file(path);
  RationalWeights w;
  const int given = !counts.empty() + !weights.empty() + !weights_file.empty();
  if (given != 1) throw DomainError("give exactly one of --counts, --weights, --weights-file");
  if (!counts.empty()) {
    w = exact_weights(parse_list<std::int64_t>(counts), q);
  } else {
    const auto t = weights.empty() ? read_weights_file(weights_file) : parse_list<double>(weights);
    RationalizeOptions opt;
    opt.keep_positive.resize(f.N());
    for (std::size_t i = 0; i < f.N(); ++i) opt.keep_positive[i] = f.column_norm(i) > 1e-12;
    w = rationalize(t, eps, opt);
  }
  if (w.n.size() != f.N()) throw ShapeError("weight count " + std::to_string(w.n.size()) + " differs from N");
  const auto id = verify_replication_identity(f, w, materialize_limit);
  RunManifest man;
  man.command = "replicate";
  man.config = {{"input", path}, {"eps", eps}, {"max_columns", max_columns},
                {"materialize_limit", materialize_limit}};
  const auto replicated = replicate(f, w, max_columns);
  if (!frame_out.empty()) {
    io::write_frame_file(frame_out, replicated);
    man.outputs.push_back(frame_out);
  }
  man.wall_time_s = sw.seconds();
  if (!out.path.empty()) man.outputs.push_back(out.path);
  out.write(dump(envelope(man, json{{"weights", w}, {"identity", id}})));
  return 0;
}

int cmd_audit(const std::string& path, const std::vector<std::uint64_t>& random, Field field,
              std::optional<double> phi, double rank_tol, std::size_t threads, const Output& out) {
  Stopwatch sw;
  std::vector<FrameMatrix> frames;
  std::uint64_t seed = 0;
  if (!path.empty()) {
    frames.push_back(normalize_to_parseval(drop_zero_columns(io::read_frame_file(path))));
  } else {
    if (random.size() != 4) throw DomainError("--random takes m N count seed");
    const auto m = random[0], n = random[1], count = random[2];
    seed = random[3];
    if (m < 1 || n < m) throw DomainError("--random: need N >= m >= 1");
    for (std::uint64_t k = 0; k < count; ++k) {
      std::mt19937_64 rng(seed * 1000003ULL + k);
      frames.push_back(random_parseval(m, n, field, rng));
    }
  }
  std::vector<std::string> lines(frames.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> all_ok{true};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < frames.size();) {
      const auto& f = frames[k];
      const double p = phi.value_or(default_phi(f.m(), f.field()));
      const auto central = audit_central_inequality(f, p, rank_tol);
      const auto rank = audit_rank_structure(f, 1.0, p * p / (1.0 + p), rank_tol);
      if (!central.all_pass() || !rank.all_pass()) all_ok = false;
      json j = {{"instance", k}, {"m", f.m()}, {"N", f.N()}, {"field", f.field()},
                {"central", central}, {"rank", rank}};
      lines[k] = j.dump();
    }
  };
  const std::size_t nt = std::min<std::size_t>(
      std::max<std::size_t>(1, threads ? threads : std::thread::hardware_concurrency()), frames.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < nt; ++t) pool.emplace_back(worker);
  }
  RunManifest man;
  man.command = "audit-bukhcox";
  man.config = {{"input", path}, {"random", random}, {"field", field}, {"phi", phi ? json(*phi) : json(nullptr)},
                {"rank_tol", rank_tol}};
  man.seed = seed;
  man.wall_time_s = sw.seconds();
  if (!out.path.empty()) man.outputs.push_back(out.path);
  std::string text = json{{"manifest", man}}.dump() + "\n";
  for (const auto& l : lines) text += l + "\n";
  out.write(text);
  return all_ok ? 0 : kExitFailure;
}

// ---------------------------------------------------------------------------
// Golden-value reproduction

struct Row {
  std::string name;
  std::string status;  // PASS / FAIL / SKIP
  double measured = 0.0;
  double target = 0.0;
  double tol = 0.0;
  double seconds = 0.0;
  std::string note;
};

int cmd_reproduce(bool quick, const std::string& policy_path, bool as_json, const Output& out) {
  io::KeyValues pol;
  std::string policy_used = policy_path;
  if (policy_used.empty()) {
    const fs::path def = fs::path(PROJCONST_DEFAULT_DATA) / "reproduce_policy.conf";
    if (fs::is_regular_file(def)) policy_used = def.string();
  }
  if (!policy_used.empty()) pol = io::read_key_values_file(policy_used);
  const double search_tol = io::get_double(pol, "search_tol", 1e-6);
  const double equality_tol = io::get_double(pol, "equality_tol", 1e-9);
  const double sic_tol = io::get_double(pol, "sic_tol", 1e-8);
  const double sic_spread = io::get_double(pol, "sic_spread", 1e-10);
  const double quick_search_tol = io::get_double(pol, "quick_search_tol", 1e-4);

  OptConfig cfg;
  io::apply_opt_config(pol, cfg);
  if (quick) cfg.starts = static_cast<std::size_t>(io::get_double(pol, "quick_starts", 8));
  const double stol = quick ? quick_search_tol : search_tol;

  std::vector<Row> rows;
  auto run = [&](const std::string& name, double target, double tol, const std::function<double()>& f) {
    Row r{name, "FAIL", 0.0, target, tol, 0.0, ""};
    Stopwatch sw;
    try {
      r.measured = f();
      r.status = std::abs(r.measured - target) <= tol ? "PASS" : "FAIL";
    } catch (const std::exception& e) {
      r.note = e.what();
    }
    r.seconds = sw.seconds();
    rows.push_back(r);
  };

  const double d23 = delta_bound(2, 3), d36 = delta_bound(3, 6);
  run("lambda R m=2 N=3", d23, stol, [&] { return lambda_search(2, 3, Field::Real, cfg).best_value; });
  run("mu R m=2 N=3", d23, stol, [&] { return mu_search(2, 3, Field::Real, cfg).best_value; });
  run("lambda R m=3 N=6", d36, stol, [&] { return lambda_search(3, 6, Field::Real, cfg).best_value; });
  run("mu C m=2 N=4", delta_bound(2, 4), stol, [&] { return mu_search(2, 4, Field::Complex, cfg).best_value; });
  for (std::uint64_t m : {2, 3, 7})
    run("certify real-max m=" + std::to_string(m), delta_bound(m, m * (m + 1) / 2), equality_tol,
        [&] {
          const auto e = certify_equality(real_maximal_etf(m));
          if (!e.ok) throw Error("equality case not certified");
          return e.perron_value;
        });
  if (const auto p = seidel_276_path()) {
    run("certify real-max m=23 (Seidel file)", delta_bound(23, 276), equality_tol, [&] {
      const auto e = certify_equality(seidel_to_etf(io::read_seidel_file(*p)));
      if (!e.ok) throw Error("equality case not certified");
      return e.perron_value;
    });
  } else {
    rows.push_back({"certify real-max m=23 (Seidel file)", "SKIP", 0.0, delta_bound(23, 276), equality_tol, 0.0,
                    "seidel_276.txt not found; set PROJCONST_DATA"});
  }
  SicSearchConfig sic;
  sic.tol = sic_spread;
  sic.seed = cfg.seed;
  for (std::uint64_t d = 2; d <= 8; ++d)
    run("certify SIC d=" + std::to_string(d), delta_bound(d, d * d), d == 3 ? equality_tol : sic_tol, [&] {
      const auto e = certify_equality(weyl_heisenberg_orbit(sic_fiducial(d, sic).v));
      if (!e.ok) throw Error("equality case not certified");
      return e.perron_value;
    });

  bool ok = true;
  for (const auto& r : rows) ok = ok && r.status != "FAIL";
  if (as_json) {
    json j = json::array();
    for (const auto& r : rows)
      j.push_back({{"name", r.name}, {"status", r.status}, {"measured", r.measured}, {"target", r.target},
                   {"tol", r.tol}, {"seconds", r.seconds}, {"note", r.note}});
    RunManifest man;
    man.command = "reproduce";
    man.config = to_json_config(cfg);
    man.config["quick"] = quick;
    man.config["policy"] = policy_used;
    man.seed = cfg.seed;
    out.write(dump(envelope(man, j)));
  } else {
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-38s %-5s %20s %20s %9s %8s\n", "row", "", "measured", "target", "tol", "sec");
    os << buf;
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof buf, "%-38s %-5s %20.15f %20.15f %9.1e %8.2f", r.name.c_str(), r.status.c_str(),
                    r.measured, r.target, r.tol, r.seconds);
      os << buf;
      if (!r.note.empty()) os << "  " << r.note;
      os << '\n';
    }
    os << (ok ? "all rows PASS (or SKIP)\n" : "FAILURES\n");
    out.write(os.str());
  }
  return ok ? 0 : kExitFailure;
}

Field field_from(const std::string& s) { return parse_field(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projection constants of finite-dimensional spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Output out;
  std::string field_name = "real";
  auto field_check = CLI::IsMember({"real", "complex", "R", "C"});

  std::uint64_t m = 0, n = 0;
  std::optional<std::uint64_t> n_opt;

  auto* bounds = app.add_subcommand("bounds", "closed-form bounds for (m, N)");
  bool csv = false;
  bounds->add_option("-m", m, "dimension")->required()->check(CLI::PositiveNumber);
  bounds->add_option("-N", n_opt, "number of columns (default: cardinality cap)");
  bounds->add_option("--field", field_name, "real or complex")->check(field_check);
  bounds->add_flag("--csv", csv, "CSV instead of JSON");
  bounds->add_option("-o,--output", out.path, "output file (default stdout)");

  SearchFlags search_flags;
  std::vector<CLI::App*> searches;
  for (const char* name : {"lambda", "mu"}) {
    auto* s = app.add_subcommand(name, std::string(name) == "lambda" ? "search for lambda_K(m, N)"
                                                                     : "search for mu_K(m, N)");
    s->add_option("-m", m, "dimension")->required()->check(CLI::PositiveNumber);
    s->add_option("-N", n, "number of columns")->required()->check(CLI::PositiveNumber);
    s->add_option("--field", field_name, "real or complex")->check(field_check);
    s->add_option("-o,--output", out.path, "report file (default stdout)");
    search_flags.attach(s);
    searches.push_back(s);
  }

  auto* witness = app.add_subcommand("witness", "equal-weight witness from a rationalized lambda optimum");
  double eps = 1e-3;
  std::int64_t materialize_limit = 4096;
  witness->add_option("-m", m, "dimension")->required()->check(CLI::PositiveNumber);
  witness->add_option("-N", n, "number of columns")->required()->check(CLI::PositiveNumber);
  witness->add_option("--field", field_name, "real or complex")->check(field_check);
  witness->add_option("--eps", eps, "rounding tolerance on t (default 1e-3)");
  witness->add_option("--materialize-limit", materialize_limit, "max columns for the explicit check (default 4096)");
  witness->add_option("-o,--output", out.path, "report file (default stdout)");
  search_flags.attach(witness);

  auto* construct = app.add_subcommand("construct", "build an ETF and write it as a frame file");
  std::string family, seidel;
  SicSearchConfig sic;
  construct->add_option("family", family, "simplex, real-max or sic")
      ->required()
      ->check(CLI::IsMember({"simplex", "real-max", "sic"}));
  construct->add_option("m", m, "dimension")->required()->check(CLI::PositiveNumber);
  construct->add_option("--field", field_name, "field for simplex (default real)")->check(field_check);
  construct->add_option("--seidel", seidel, "Seidel file for real-max")->check(CLI::ExistingFile);
  construct->add_option("--sic-tol", sic.tol, "spread target for sic (default 1e-10)");
  construct->add_option("--sic-starts", sic.starts, "random starts for sic (default 4000)");
  construct->add_option("--seed", sic.seed, "seed for sic (default 0)");
  construct->add_option("-o,--output", out.path, "frame file (default <family>-<m>.frame)");

  auto* certify = app.add_subcommand("certify", "ETF certificate and equality-case values of a frame file");
  std::string input;
  double etf_tol = 1e-8, value_tol = 1e-9;
  certify->add_option("file", input, "frame file")->required();
  certify->add_option("--tol", etf_tol, "ETF tolerance (default 1e-8)");
  certify->add_option("--value-tol", value_tol, "tolerance against delta (default 1e-9)");
  certify->add_option("-o,--output", out.path, "report file (default stdout)");

  auto* repl = app.add_subcommand("replicate", "column replication and its identity");
  std::string counts, weights, weights_file, frame_out;
  std::int64_t q = 1, max_columns = 1'000'000;
  double rep_eps = 0.0;
  repl->add_option("file", input, "Parseval frame file")->required();
  repl->add_option("--counts", counts, "comma-separated n_i");
  repl->add_option("--q", q, "common denominator for --counts (default 1)");
  repl->add_option("--weights", weights, "comma-separated t_i, rationalized with --eps");
  repl->add_option("--weights-file", weights_file, "whitespace-separated t_i")->check(CLI::ExistingFile);
  repl->add_option("--eps", rep_eps, "rounding tolerance for weights (default 0: exact)");
  repl->add_option("--max-columns", max_columns, "refuse larger replications (default 1000000)");
  repl->add_option("--materialize-limit", materialize_limit, "max columns for the explicit check (default 4096)");
  repl->add_option("--frame-out", frame_out, "write the replicated frame here");
  repl->add_option("-o,--output", out.path, "report file (default stdout)");

  auto* audit = app.add_subcommand("audit-bukhcox", "audit the lift-matrix inequalities (JSON lines)");
  std::vector<std::uint64_t> random;
  std::optional<double> phi;
  double rank_tol = 1e-8;
  std::size_t threads = 0;
  auto* file_opt = audit->add_option("file", input, "frame file");
  auto* rand_opt = audit->add_option("--random", random, "m N count seed")->expected(4);
  file_opt->excludes(rand_opt);
  audit->add_option("--field", field_name, "field for --random (default real)")->check(field_check);
  audit->add_option("--phi", phi, "phi > 0 (default 1/sqrt(m+2) real, 1/sqrt(m+1) complex)");
  audit->add_option("--rank-tol", rank_tol, "relative rank tolerance (default 1e-8)");
  audit->add_option("--threads", threads, "worker threads, 0 = all cores");
  audit->add_option("-o,--output", out.path, "output file (default stdout)");

  auto* repro = app.add_subcommand("reproduce", "golden-value reproduction table");
  bool quick = false, repro_json = false;
  std::string policy;
  repro->add_flag("--quick", quick, "8 starts per search");
  repro->add_option("--policy", policy, "tolerance policy file")->check(CLI::ExistingFile);
  repro->add_flag("--json", repro_json, "JSON instead of a table");
  repro->add_option("-o,--output", out.path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const Field field = field_from(field_name);
    if (bounds->parsed()) return cmd_bounds(m, n_opt, field, csv, out);
    for (auto* s : searches)
      if (s->parsed()) return cmd_search(s->get_name(), m, n, field, search_flags, out);
    if (witness->parsed()) return cmd_witness(m, n, field, eps, materialize_limit, search_flags, out);
    if (construct->parsed()) return cmd_construct(family, m, field, seidel, sic, out.path);
    if (certify->parsed()) return cmd_certify(input, etf_tol, value_tol, out);
    if (repl->parsed())
      return cmd_replicate(input, counts, q, weights, weights_file, rep_eps, max_columns, materialize_limit,
                           frame_out, out);
    if (audit->parsed()) {
      if (input.empty() && random.empty()) throw DomainError("give a frame file or --random m N count seed");
      return cmd_audit(input, random, field, phi, rank_tol, threads, out);
    }
    if (repro->parsed()) return cmd_reproduce(quick, policy, repro_json, out);
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
