#pragma once

// CSV emission and parsing for the command outputs. Doubles are written with
// 17 significant digits so every value round-trips exactly. Lines starting
// with '#' are comments; "# note: " comments carry report notes.

#include <charconv>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <utility>
#include <vector>

#include "qscatter/error.hpp"
#include "qscatter/matching.hpp"
#include "qscatter/optical.hpp"
#include "qscatter/quaternion.hpp"

namespace qscatter::csv {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

/// Whole-field double parse; column is reported in errors.
inline double parse_double(std::string_view field, std::size_t line, std::size_t column) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ParseError(line, column, "expected a number, got '" + std::string(field) + "'");
  }
  return v;
}

inline long parse_integer(std::string_view field, std::size_t line, std::size_t column) {
  long v = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ParseError(line, column, "expected an integer, got '" + std::string(field) + "'");
  }
  return v;
}

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Field> split(std::string_view line) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back({line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start),
                   start + 1});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Non-empty lines with their 1-based numbers; trailing '\r' stripped.
inline std::vector<std::pair<std::size_t, std::string_view>> lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.emplace_back(number, line);
  }
  return out;
}

template <class... Ts>
std::string row(const Ts&... values) {
  std::string out;
  bool first = true;
  auto append = [&out, &first](const auto& v) {
    if (!first) out += ',';
    first = false;
    if constexpr (std::is_arithmetic_v<std::decay_t<decltype(v)>> && !std::is_integral_v<std::decay_t<decltype(v)>>) {
      out += format_double(v);
    } else if constexpr (std::is_integral_v<std::decay_t<decltype(v)>>) {
      out += std::to_string(v);
    } else {
      out += v;
    }
  };
  (append(values), ...);
  out += '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Consistency report

inline constexpr std::string_view consistency_columns = "field,r,value";

inline std::string format_consistency_body(const ConsistencyReport& r) {
  std::string out;
  for (const auto& note : r.notes) out += "# note: " + note + "\n";
  out += std::string(consistency_columns) + "\n";
  out += row(std::string("k"), std::string(), r.k);
  out += row(std::string("sigma_closed"), std::string(), r.sigma_closed);
  out += row(std::string("sigma_quadrature"), std::string(), r.sigma_quadrature);
  out += row(std::string("sigma_optical"), std::string(), r.sigma_optical);
  for (const auto& [radius, flux] : r.flux_residuals) out += row(std::string("flux_residual"), radius, flux);
  return out;
}

inline ConsistencyReport parse_consistency_report(std::string_view text) {
  constexpr std::string_view note_prefix = "# note: ";
  ConsistencyReport r;
  bool header_seen = false;
  for (const auto& [number, line] : lines(text)) {
    if (line.starts_with(note_prefix)) {
      r.notes.emplace_back(line.substr(note_prefix.size()));
      continue;
    }
    if (line.front() == '#') continue;
    if (!header_seen) {
      if (line != consistency_columns) throw ParseError(number, 1, "expected header '" + std::string(consistency_columns) + "'");
      header_seen = true;
      continue;
    }
    const auto f = split(line);
    if (f.size() != 3) throw ParseError(number, 1, "expected 3 fields");
    const double value = parse_double(f[2].text, number, f[2].column);
    if (f[0].text == "k") {
      r.k = value;
    } else if (f[0].text == "sigma_closed") {
      r.sigma_closed = value;
    } else if (f[0].text == "sigma_quadrature") {
      r.sigma_quadrature = value;
    } else if (f[0].text == "sigma_optical") {
      r.sigma_optical = value;
    } else if (f[0].text == "flux_residual") {
      r.flux_residuals.emplace_back(parse_double(f[1].text, number, f[1].column), value);
    } else {
      throw ParseError(number, 1, "unknown field '" + std::string(f[0].text) + "'");
    }
  }
  if (!header_seen) throw ParseError(1, 1, "missing header");
  return r;
}

// ---------------------------------------------------------------------------
// Matching residuals

inline constexpr std::string_view match_columns =
    "ell,k,a,delta,theta_pol,xi,gamma0,gamma1_re,gamma1_im,"
    "left_w,left_x,left_y,left_z,right_w,right_x,right_y,right_z,"
    "gamma0_residual_left,gamma0_residual_right,gamma1_residual_left,gamma1_residual_right,status";

inline std::string format_match_row(const MatchingResiduals& m) {
  const auto l = m.numeric_left.components();
  const auto r = m.numeric_right.components();
  return row(m.mode.ell, m.k, m.a, m.mode.delta, m.mode.theta_pol, m.mode.xi, m.gamma0, m.gamma1.real(),
             m.gamma1.imag(), l[0], l[1], l[2], l[3], r[0], r[1], r[2], r[3], m.gamma0_residual_left,
             m.gamma0_residual_right, m.gamma1_residual_left, m.gamma1_residual_right, m.status);
}

inline std::vector<MatchingResiduals> parse_match_report(std::string_view text) {
  std::vector<MatchingResiduals> out;
  bool header_seen = false;
  for (const auto& [number, line] : lines(text)) {
    if (line.front() == '#') continue;
    if (!header_seen) {
      if (line != match_columns) throw ParseError(number, 1, "expected match header");
      header_seen = true;
      continue;
    }
    const auto f = split(line);
    if (f.size() != 22) throw ParseError(number, 1, "expected 22 fields");
    auto num = [&](std::size_t i) { return parse_double(f[i].text, number, f[i].column); };
    MatchingResiduals m;
    m.mode.ell = static_cast<int>(parse_integer(f[0].text, number, f[0].column));
    m.k = num(1);
    m.a = num(2);
    m.mode.delta = num(3);
    m.mode.theta_pol = num(4);
    m.mode.xi = num(5);
    m.gamma0 = num(6);
    m.gamma1 = {num(7), num(8)};
    m.numeric_left = Quaternion::from_components(num(9), num(10), num(11), num(12));
    m.numeric_right = Quaternion::from_components(num(13), num(14), num(15), num(16));
    m.gamma0_residual_left = num(17);
    m.gamma0_residual_right = num(18);
    m.gamma1_residual_left = num(19);
    m.gamma1_residual_right = num(20);
    m.status = std::string(f[21].text);
    out.push_back(std::move(m));
  }
  if (!header_seen) throw ParseError(1, 1, "missing header");
  return out;
}

}  // namespace qscatter::csv
