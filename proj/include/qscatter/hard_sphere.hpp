#pragma once

// Impenetrable sphere of radius R. Only the complex symplectic component of
// the radial bracket vanishes at r = R, which fixes
//
//   tan(delta_l) = j_l(kR) / y_l(kR),     sin(Theta_l) = 1 / y_l(kR).
//
// xi_l is left free by the boundary condition and taken from the config.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qscatter/error.hpp"
#include "qscatter/partial_waves.hpp"
#include "qscatter/special_functions.hpp"

namespace qscatter {

/// What to do with a channel where |y_l(kR)| < 1 and no real Theta exists.
enum class SaturationPolicy { reject, clamp };

struct HardSphereConfig {
  double R = 1.0;
  double k = 1.0;
  int ell_max = 0;
  double xi = 0.0;
  SaturationPolicy saturation = SaturationPolicy::reject;
};

/// ceil(kR) + 8.
inline int default_ell_max(double kR) { return static_cast<int>(std::ceil(kR)) + 8; }

inline void validate(const HardSphereConfig& c) {
  if (!(c.R > 0.0) || !std::isfinite(c.R)) throw std::invalid_argument("sphere radius must be positive");
  if (!(c.k > 0.0) || !std::isfinite(c.k)) throw std::invalid_argument("wave number must be positive");
  if (c.ell_max < 0 || c.ell_max > max_bessel_order) throw std::invalid_argument("ell_max out of range");
}

/// atan(j_l / y_l), in (-pi/2, pi/2].
inline double phase_shift(int ell, double kR) {
  const double j = sph_bessel_j(ell, kR);
  const double y = sph_bessel_y(ell, kR);
  if (y == 0.0) return std::numbers::pi / 2.0;
  return std::atan(j / y);
}

inline bool is_saturated(int ell, double kR) { return std::abs(sph_bessel_y(ell, kR)) < 1.0; }

/// asin(1 / y_l(kR)); throws SaturatedMode when |y_l| < 1.
inline double polarization_angle(int ell, double kR) {
  const double y = sph_bessel_y(ell, kR);
  if (std::abs(y) < 1.0) {
    throw SaturatedMode("|y_l(kR)| < 1: no real polarization angle (quaternionically saturated channel)", ell);
  }
  return std::asin(1.0 / y);
}

/// Polarization angle with saturated channels pinned to +-pi/2 (sign of y_l).
inline double clamped_polarization_angle(int ell, double kR) {
  const double y = sph_bessel_y(ell, kR);
  if (std::abs(y) < 1.0) return std::copysign(std::numbers::pi / 2.0, y);
  return std::asin(1.0 / y);
}

/// Channels in [0, ell_max] whose polarization angle had to be clamped.
inline std::vector<int> saturated_channels(const HardSphereConfig& c) {
  std::vector<int> out;
  for (int ell = 0; ell <= c.ell_max; ++ell) {
    if (is_saturated(ell, c.k * c.R)) out.push_back(ell);
  }
  return out;
}

inline ScatteringModel build_model(const HardSphereConfig& c) {
  validate(c);
  const double kR = c.k * c.R;
  std::vector<ModeParams> modes;
  modes.reserve(static_cast<std::size_t>(c.ell_max) + 1);
  for (int ell = 0; ell <= c.ell_max; ++ell) {
    const double theta = c.saturation == SaturationPolicy::clamp ? clamped_polarization_angle(ell, kR)
                                                                 : polarization_angle(ell, kR);
    modes.push_back({ell, phase_shift(ell, kR), theta, c.xi});
  }
  return {c.k, std::move(modes)};
}

/// 4 pi / k^2 sum (2l+1) (j^2 + sin^2 Theta y^2) / (j^2 + y^2), truncated at ell_max.
inline double total_cross_section_high_energy(const HardSphereConfig& c) {
  validate(c);
  const double kR = c.k * c.R;
  double sum = 0.0;
  for (int ell = 0; ell <= c.ell_max; ++ell) {
    const double j = sph_bessel_j(ell, kR);
    const double y = sph_bessel_y(ell, kR);
    const double theta = c.saturation == SaturationPolicy::clamp ? clamped_polarization_angle(ell, kR)
                                                                 : polarization_angle(ell, kR);
    const double st = std::sin(theta);
    // Divided through by y^2, which overflows at small kR and large l.
    const double t = y == 0.0 ? 0.0 : j / y;
    sum += (2.0 * ell + 1.0) * (y == 0.0 ? 1.0 : (t * t + st * st) / (t * t + 1.0));
  }
  return 4.0 * std::numbers::pi / (c.k * c.k) * sum;
}

/// Leading small-kR form: tan(delta_l) ~ -(kR)^{2l+1} / ((2l+1)!! (2l-1)!!).
inline double tan_phase_shift_low_energy(int ell, double kR) {
  return -std::pow(kR, 2 * ell + 1) / (detail::double_factorial_odd(ell + 1) * detail::double_factorial_odd(ell));
}

/// Leading small-kR form: sin(Theta_l) ~ -(kR)^{l+1} / (2l-1)!!.
inline double sin_polarization_low_energy(int ell, double kR) {
  return -std::pow(kR, ell + 1) / detail::double_factorial_odd(ell);
}

/// 8 pi R^2 (1 - k^2 R^2 / 2), the low-energy form with its printed correction term.
inline double low_energy_cross_section(double R, double k) {
  const double kR = k * R;
  return 8.0 * std::numbers::pi * R * R * (1.0 - 0.5 * kR * kR);
}

/// c in sigma = 8 pi R^2 (1 + c (kR)^2 + ...), measured from the exact sum.
/// With only l = 0 this tends to -1/6; the l = 1 polarization term adds 3/2.
inline double measured_low_energy_coefficient(const HardSphereConfig& c) {
  const double sigma = total_cross_section(build_model(c));
  const double kR = c.k * c.R;
  return (sigma / (8.0 * std::numbers::pi * c.R * c.R) - 1.0) / (kR * kR);
}

}  // namespace qscatter
