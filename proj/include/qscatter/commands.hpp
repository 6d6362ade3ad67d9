#pragma once

// The CSV-producing commands behind the qscatter CLI. Every output starts with
// a reproducibility comment line naming the version, command and parameters,
// and is byte-identical for identical inputs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qscatter/csv.hpp"
#include "qscatter/hard_sphere.hpp"
#include "qscatter/matching.hpp"
#include "qscatter/optical.hpp"
#include "qscatter/parallel.hpp"
#include "qscatter/partial_waves.hpp"

namespace qscatter {

inline constexpr std::string_view version = "1.0.0";

inline std::string header_line(std::string_view command, std::string_view params) {
  std::string out = "# qscatter " + std::string(version) + " command=" + std::string(command);
  if (!params.empty()) out += " " + std::string(params);
  return out + "\n";
}

/// "START:STOP:N" -> N evenly spaced values, both ends included.
inline std::vector<double> parse_sweep(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw std::invalid_argument("sweep must look like START:STOP:N");
  double start = 0.0;
  double stop = 0.0;
  long n = 0;
  try {
    start = csv::parse_double(text.substr(0, c1), 1, 1);
    stop = csv::parse_double(text.substr(c1 + 1, c2 - c1 - 1), 1, c1 + 2);
    n = csv::parse_integer(text.substr(c2 + 1), 1, c2 + 2);
  } catch (const ParseError& e) {
    throw std::invalid_argument(std::string("bad sweep: ") + e.what());
  }
  if (n < 1) throw std::invalid_argument("sweep needs N >= 1");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = n == 1 ? start : start + (stop - start) * static_cast<double>(i) / (n - 1);
  }
  out.back() = n == 1 ? start : stop;
  return out;
}

/// Evenly spaced angles on [0, pi], both ends included.
inline std::vector<double> theta_grid(std::size_t points) {
  if (points < 2) throw std::invalid_argument("theta grid needs at least 2 points");
  std::vector<double> out(points);
  for (std::size_t n = 0; n < points; ++n) out[n] = std::numbers::pi * static_cast<double>(n) / (points - 1);
  out.back() = std::numbers::pi;
  return out;
}

inline std::string warning_lines(const ScatteringModel& model) {
  if (auto w = truncation_warning(model)) return "# warning: " + *w + "\n";
  return {};
}

struct AmplitudeOptions {
  std::size_t theta_points = 181;
  bool degrees = false;
};

inline constexpr std::string_view amplitude_columns = "theta,F_w,F_x,F_y,F_z,sigma_diff";

inline std::string cmd_amplitude(const ScatteringModel& model, const AmplitudeOptions& opt, std::string_view params) {
  const auto grid = theta_grid(opt.theta_points);
  const auto samples = parallel_map(grid.size(), [&](std::size_t n) { return sample_amplitude(model, grid[n]); });
  std::string out = header_line("amplitude", params) + warning_lines(model);
  out += std::string(amplitude_columns) + "\n";
  for (const auto& s : samples) {
    const auto c = s.F.components();
    const double theta = opt.degrees ? s.theta * 180.0 / std::numbers::pi : s.theta;
    out += csv::row(theta, c[0], c[1], c[2], c[3], s.sigma_diff);
  }
  return out;
}

inline constexpr std::string_view cross_section_columns = "k,sigma_closed,sigma_quadrature,sigma_complex_limit,ratio";

inline std::string cmd_cross_section(std::span<const ScatteringModel> models, const QuadratureRule& rule,
                                     std::string_view params) {
  struct Row {
    double k, closed, quadrature, complex_limit;
  };
  const auto rows = parallel_map(models.size(), [&](std::size_t n) {
    const auto& m = models[n];
    return Row{m.k(), total_cross_section(m), sphere_integrated_cross_section(m, rule),
               total_cross_section(complex_limit(m))};
  });
  std::string out = header_line("cross-section", params);
  for (const auto& m : models) out += warning_lines(m);
  out += std::string(cross_section_columns) + "\n";
  for (const auto& r : rows) out += csv::row(r.k, r.closed, r.quadrature, r.complex_limit, r.closed / r.complex_limit);
  return out;
}

/// One model per sweep value kR, k = kR / R.
inline std::vector<ScatteringModel> hard_sphere_sweep(double R, std::span<const double> kR_values,
                                                      std::optional<int> ell_max, double xi, SaturationPolicy policy) {
  return parallel_map(kR_values.size(), [&](std::size_t n) {
    HardSphereConfig c;
    c.R = R;
    c.k = kR_values[n] / R;
    c.ell_max = ell_max.value_or(default_ell_max(kR_values[n]));
    c.xi = xi;
    c.saturation = policy;
    return build_model(c);
  });
}

inline constexpr std::string_view hard_sphere_columns =
    "ell,kR,delta,theta_pol,xi,tan_delta,tan_delta_low_energy,sin_theta,sin_theta_low_energy,saturated";

inline std::string cmd_hard_sphere(const HardSphereConfig& config, std::string_view params) {
  const ScatteringModel model = build_model(config);
  const double kR = config.k * config.R;
  const auto saturated = saturated_channels(config);

  const double sigma = total_cross_section(model);
  const double sigma_complex = total_cross_section(complex_limit(model));
  const double sigma_high = total_cross_section_high_energy(config);
  const double geometric = 8.0 * std::numbers::pi * config.R * config.R;

  std::string out = header_line("hard-sphere", params) + warning_lines(model);
  for (int ell : saturated) {
    out += "# warning: channel ell=" + std::to_string(ell) + " is quaternionically saturated (|y_l(kR)| < 1); "
           "theta_pol clamped to +-pi/2\n";
  }
  out += "# sigma = " + csv::format_double(sigma) + "\n";
  out += "# sigma_high_energy_sum = " + csv::format_double(sigma_high) + "\n";
  out += "# sigma_complex_limit = " + csv::format_double(sigma_complex) + "\n";
  out += "# ratio = " + csv::format_double(sigma / sigma_complex) + "\n";
  out += "# sigma_over_8piR2 = " + csv::format_double(sigma / geometric) + "\n";
  out += "# low_energy_coefficient_measured = " + csv::format_double((sigma / geometric - 1.0) / (kR * kR)) +
         " (printed low-energy form uses -0.5)\n";
  out += std::string(hard_sphere_columns) + "\n";
  for (const auto& m : model.modes()) {
    const bool sat = std::find(saturated.begin(), saturated.end(), m.ell) != saturated.end();
    out += csv::row(m.ell, kR, m.delta, m.theta_pol, m.xi, std::tan(m.delta), tan_phase_shift_low_energy(m.ell, kR),
                    std::sin(m.theta_pol), sin_polarization_low_energy(m.ell, kR), sat ? 1 : 0);
  }
  return out;
}

inline std::string cmd_match(const ScatteringModel& model, double a, std::string_view params) {
  const auto reports = parallel_map(model.modes().size(), [&](std::size_t n) {
    return matching_residual_report(model.modes()[n], model.k(), a);
  });
  std::string out = header_line("match", params);
  out += std::string(csv::match_columns) + "\n";
  for (const auto& r : reports) out += csv::format_match_row(r);
  return out;
}

/// kr in {50, 100, 200, 400}.
inline std::vector<double> default_radii(double k) { return {50.0 / k, 100.0 / k, 200.0 / k, 400.0 / k}; }

inline std::string cmd_optical(const ScatteringModel& model, const std::vector<double>& radii, const QuadratureRule& rule,
                               std::string_view params) {
  const auto report = build_consistency_report(model, radii, rule);
  return header_line("optical", params) + warning_lines(model) + csv::format_consistency_body(report);
}

}  // namespace qscatter
