#pragma once

// Text formats.
//
// Frame file:
//   frame <real|complex> <m> <N>
//   <m entries of column 1>
//   ...
//   <m entries of column N>
// Entries are decimal with 17 significant digits; complex entries are written
// a+bi / a-bi. '#' starts a comment anywhere on a line; blank lines are ignored.
//
// Seidel file:
//   seidel <N>
//   N rows of N entries from {0, 1, -1}
//
// Config file: one `key = value` per line.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "projconst/errors.hpp"
#include "projconst/etf.hpp"
#include "projconst/frames.hpp"
#include "projconst/matrix.hpp"
#include "projconst/projection_constants.hpp"

namespace projconst::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::string_view strip_comment(std::string_view s) {
  const auto h = s.find('#');
  return trim(h == std::string_view::npos ? s : s.substr(0, h));
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

inline bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

// Non-comment, non-blank lines paired with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto body = strip_comment(line);
    if (!body.empty()) out.emplace_back(no, std::string(body));
  }
  return out;
}

}  // namespace detail

/// Parses "a", "a+bi", "a-bi" or "bi".
inline bool parse_scalar(std::string_view tok, Scalar& out) {
  if (tok.empty()) return false;
  if (tok.back() != 'i') {
    double re;
    if (!detail::parse_double(tok, re)) return false;
    out = re;
    return true;
  }
  tok.remove_suffix(1);
  // Split at the last sign that is not a leading sign or part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = tok.size(); k-- > 1;) {
    if ((tok[k] == '+' || tok[k] == '-') && tok[k - 1] != 'e' && tok[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  double re = 0.0, im = 0.0;
  if (split == std::string_view::npos) {
    if (!detail::parse_double(tok, im)) return false;
  } else {
    if (!detail::parse_double(tok.substr(0, split), re)) return false;
    if (!detail::parse_double(tok.substr(split), im)) return false;
  }
  out = {re, im};
  return true;
}

inline std::string format_scalar(Scalar z, Field field) {
  char buf[96];
  if (field == Field::Real)
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
  else
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

inline FrameMatrix read_frame(std::istream& in) {
  const auto lines = detail::content_lines(in);
  if (lines.empty()) throw FormatError(1, "empty frame file");
  const auto& [hno, header] = lines.front();
  const auto h = detail::split_ws(header);
  if (h.size() != 4 || h[0] != "frame")
    throw FormatError(hno, "expected header 'frame <real|complex> <m> <N>'");
  Field field;
  try {
    field = parse_field(h[1]);
  } catch (const DomainError&) {
    throw FormatError(hno, "unknown field '" + std::string(h[1]) + "'");
  }
  std::size_t m = 0, n = 0;
  auto parse_count = [&](std::string_view s, std::size_t& v) {
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || v == 0)
      throw FormatError(hno, "bad dimension '" + std::string(s) + "'");
  };
  parse_count(h[2], m);
  parse_count(h[3], n);
  if (lines.size() - 1 != n)
    throw FormatError(lines.back().first, "expected " + std::to_string(n) + " column records, found " +
                                              std::to_string(lines.size() - 1));
  Matrix u(m, n, field);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& [no, text] = lines[j + 1];
    const auto toks = detail::split_ws(text);
    if (toks.size() != m)
      throw FormatError(no, "expected " + std::to_string(m) + " entries, found " + std::to_string(toks.size()));
    for (std::size_t i = 0; i < m; ++i) {
      Scalar z;
      if (!parse_scalar(toks[i], z)) throw FormatError(no, "cannot parse entry '" + std::string(toks[i]) + "'");
      if (field == Field::Real && z.imag() != 0.0) throw FormatError(no, "complex entry in a real frame");
      u(i, j) = z;
    }
  }
  try {
    return FrameMatrix(std::move(u));
  } catch (const ShapeError& e) {
    throw FormatError(hno, e.what());
  }
}

inline void write_frame(std::ostream& out, const FrameMatrix& f) {
  out << "frame " << to_string(f.field()) << ' ' << f.m() << ' ' << f.N() << '\n';
  for (std::size_t j = 0; j < f.N(); ++j) {
    for (std::size_t i = 0; i < f.m(); ++i) {
      if (i) out << ' ';
      out << format_scalar(f.matrix()(i, j), f.field());
    }
    out << '\n';
  }
}

inline SeidelMatrix read_seidel(std::istream& in) {
  const auto lines = detail::content_lines(in);
  if (lines.empty()) throw FormatError(1, "empty Seidel file");
  const auto& [hno, header] = lines.front();
  const auto h = detail::split_ws(header);
  std::size_t n = 0;
  if (h.size() != 2 || h[0] != "seidel" ||
      std::from_chars(h[1].data(), h[1].data() + h[1].size(), n).ec != std::errc() || n == 0)
    throw FormatError(hno, "expected header 'seidel <N>'");
  if (lines.size() - 1 != n)
    throw FormatError(lines.back().first, "expected " + std::to_string(n) + " rows");
  Matrix s(n, n, Field::Real);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& [no, text] = lines[i + 1];
    const auto toks = detail::split_ws(text);
    if (toks.size() != n) throw FormatError(no, "expected " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j) {
      if (toks[j] == "0") s(i, j) = 0.0;
      else if (toks[j] == "1") s(i, j) = 1.0;
      else if (toks[j] == "-1") s(i, j) = -1.0;
      else throw FormatError(no, "entry '" + std::string(toks[j]) + "' not in {0, 1, -1}");
    }
  }
  try {
    return SeidelMatrix(std::move(s));
  } catch (const Error& e) {
    throw FormatError(hno, e.what());
  }
}

inline void write_seidel(std::ostream& out, const SeidelMatrix& s) {
  out << "seidel " << s.size() << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j) out << ' ';
      out << static_cast<int>(s.matrix()(i, j).real());
    }
    out << '\n';
  }
}

template <class T, class Reader>
T read_file(const std::string& path, Reader reader) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return reader(in);
}

inline FrameMatrix read_frame_file(const std::string& path) {
  return read_file<FrameMatrix>(path, [](std::istream& in) { return read_frame(in); });
}
inline SeidelMatrix read_seidel_file(const std::string& path) {
  return read_file<SeidelMatrix>(path, [](std::istream& in) { return read_seidel(in); });
}
inline void write_frame_file(const std::string& path, const FrameMatrix& f) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_frame(out, f);
}

// ---------------------------------------------------------------------------
// key = value configuration

struct ConfigEntry {
  std::string value;
  std::size_t line = 0;
};

using KeyValues = std::map<std::string, ConfigEntry>;

inline KeyValues read_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto body = detail::strip_comment(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw FormatError(no, "expected 'key = value'");
    const auto key = detail::trim(body.substr(0, eq));
    const auto value = detail::trim(body.substr(eq + 1));
    if (key.empty()) throw FormatError(no, "empty key");
    kv[std::string(key)] = {std::string(value), no};
  }
  return kv;
}

inline KeyValues read_key_values_file(const std::string& path) {
  return read_file<KeyValues>(path, [](std::istream& in) { return read_key_values(in); });
}

namespace detail {

template <class T>
T parse_value(const std::string& key, const ConfigEntry& e) {
  T v{};
  if constexpr (std::is_floating_point_v<T>) {
    if (!parse_double(e.value, v)) throw FormatError(e.line, "bad number for '" + key + "'");
  } else {
    const auto r = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
    if (r.ec != std::errc() || r.ptr != e.value.data() + e.value.size())
      throw FormatError(e.line, "bad integer for '" + key + "'");
  }
  return v;
}

}  // namespace detail

/// Overrides the fields of cfg named in kv. Keys outside the OptConfig set are
/// left for the caller; the return value lists them.
inline std::vector<std::string> apply_opt_config(const KeyValues& kv, OptConfig& cfg) {
  std::vector<std::string> unused;
  for (const auto& [key, e] : kv) {
    if (key == "starts") cfg.starts = detail::parse_value<std::size_t>(key, e);
    else if (key == "seed") cfg.seed = detail::parse_value<std::uint64_t>(key, e);
    else if (key == "eps_init") cfg.eps_init = detail::parse_value<double>(key, e);
    else if (key == "eps_final") cfg.eps_final = detail::parse_value<double>(key, e);
    else if (key == "eps_factor") cfg.eps_factor = detail::parse_value<double>(key, e);
    else if (key == "max_outer") cfg.max_outer = detail::parse_value<std::size_t>(key, e);
    else if (key == "max_linesearch") cfg.max_linesearch = detail::parse_value<std::size_t>(key, e);
    else if (key == "tol") cfg.tol = detail::parse_value<double>(key, e);
    else if (key == "threads") cfg.threads = detail::parse_value<std::size_t>(key, e);
    else unused.push_back(key);
  }
  if (!(cfg.eps_factor > 0.0 && cfg.eps_factor < 1.0)) throw DomainError("eps_factor must lie in (0, 1)");
  if (!(cfg.eps_final > 0.0 && cfg.eps_init >= cfg.eps_final))
    throw DomainError("need eps_init >= eps_final > 0");
  return unused;
}

inline double get_double(const KeyValues& kv, const std::string& key, double fallback) {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : detail::parse_value<double>(key, it->second);
}

}  // namespace projconst::io
