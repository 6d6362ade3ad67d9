#pragma once

// Quaternionic partial-wave expansion. Units hbar = m = 1; the wave number k
// is the only scale. Each channel l carries the unit quaternion
//
//   Lambda_l = cos(Theta_l) e^{i delta_l} + sin(Theta_l) e^{i xi_l} j
//
// and the outgoing amplitude is
//
//   F(theta) = 1/(2k) sum_l (2l+1) Lambda_l i (1 - Lambda_l^2) P_l(cos theta).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qscatter/error.hpp"
#include "qscatter/quaternion.hpp"
#include "qscatter/special_functions.hpp"

namespace qscatter {

/// Phase shift delta, polarization angle theta_pol and quaternionic phase xi
/// of channel ell (radians).
struct ModeParams {
  int ell = 0;
  double delta = 0.0;
  double theta_pol = 0.0;
  double xi = 0.0;

  friend bool operator==(const ModeParams&, const ModeParams&) = default;
};

/// Moves theta_pol into [-pi/2, pi/2] (cos >= 0) without changing Lambda:
/// a shift of theta_pol by pi flips both terms, compensated by pi in delta and xi.
inline ModeParams canonical(ModeParams m) {
  constexpr double pi = std::numbers::pi;
  double t = std::remainder(m.theta_pol, 2.0 * pi);  // (-pi, pi]
  if (t > pi / 2) {
    t -= pi;
    m.delta += pi;
    m.xi += pi;
  } else if (t < -pi / 2) {
    t += pi;
    m.delta += pi;
    m.xi += pi;
  }
  m.theta_pol = t;
  return m;
}

/// Wave number plus a finite, ell-sorted list of channels. Channels not listed
/// do not scatter.
class ScatteringModel {
 public:
  ScatteringModel(double k, std::vector<ModeParams> modes) : k_(k), modes_(std::move(modes)) {
    if (!(k_ > 0.0) || !std::isfinite(k_)) throw std::invalid_argument("wave number k must be positive and finite");
    for (auto& m : modes_) {
      if (m.ell < 0) throw std::invalid_argument("negative ell in mode list");
      if (!std::isfinite(m.delta) || !std::isfinite(m.theta_pol) || !std::isfinite(m.xi)) {
        throw std::invalid_argument("non-finite mode angle for ell=" + std::to_string(m.ell));
      }
      m = canonical(m);
    }
    std::sort(modes_.begin(), modes_.end(), [](const ModeParams& a, const ModeParams& b) { return a.ell < b.ell; });
    for (std::size_t i = 1; i < modes_.size(); ++i) {
      if (modes_[i].ell == modes_[i - 1].ell) {
        throw std::invalid_argument("duplicate ell=" + std::to_string(modes_[i].ell) + " in mode list");
      }
    }
  }

  double k() const { return k_; }
  std::span<const ModeParams> modes() const { return modes_; }
  int ell_max() const { return modes_.empty() ? -1 : modes_.back().ell; }

 private:
  double k_;
  std::vector<ModeParams> modes_;
};

/// i^ell, exactly.
inline std::complex<double> i_power(int ell) {
  switch (((ell % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline Quaternion lambda_coeff(const ModeParams& m) {
  return {std::cos(m.theta_pol) * std::polar(1.0, m.delta), std::sin(m.theta_pol) * std::polar(1.0, m.xi)};
}

/// A_l = -Lambda_l i Lambda_l
inline Quaternion a_coeff(const ModeParams& m) {
  const Quaternion lambda = lambda_coeff(m);
  return -(lambda * Quaternion::unit_i() * lambda);
}

/// Per-channel amplitude coefficient (2l+1)/(2k) Lambda i (1 - Lambda^2).
inline Quaternion amplitude_coefficient(const ModeParams& m, double k) {
  const Quaternion lambda = lambda_coeff(m);
  const Quaternion one_minus_sq = Quaternion(1.0) - lambda * lambda;
  return (lambda * Quaternion::unit_i() * one_minus_sq) * ((2.0 * m.ell + 1.0) / (2.0 * k));
}

/// F as a function of mu = cos(theta).
inline Quaternion amplitude_at_cos(const ScatteringModel& model, double mu) {
  const auto p = legendre_p_all(model.ell_max(), mu);
  Quaternion f;
  for (const auto& m : model.modes()) f += amplitude_coefficient(m, model.k()) * p[m.ell];
  return f;
}

inline void check_scattering_angle(double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw DomainError("scattering angle outside [0, pi]");
}

inline Quaternion amplitude(const ScatteringModel& model, double theta) {
  check_scattering_angle(theta);
  return amplitude_at_cos(model, std::cos(theta));
}

inline double differential_cross_section(const ScatteringModel& model, double theta) {
  return norm2(amplitude(model, theta));
}

struct AmplitudeSample {
  double theta;
  Quaternion F;
  double sigma_diff;
};

inline AmplitudeSample sample_amplitude(const ScatteringModel& model, double theta) {
  const Quaternion f = amplitude(model, theta);
  return {theta, f, norm2(f)};
}

/// sin^2(delta) cos^2(Theta) + sin^2(Theta): one channel's weight in sigma.
inline double channel_weight(const ModeParams& m) {
  const double sd = std::sin(m.delta);
  const double st = std::sin(m.theta_pol);
  const double ct = std::cos(m.theta_pol);
  return sd * sd * ct * ct + st * st;
}

/// Closed form 4 pi / k^2 sum (2l+1) (sin^2 delta cos^2 Theta + sin^2 Theta).
inline double total_cross_section(const ScatteringModel& model) {
  double sum = 0.0;
  for (const auto& m : model.modes()) sum += (2.0 * m.ell + 1.0) * channel_weight(m);
  return 4.0 * std::numbers::pi / (model.k() * model.k()) * sum;
}

/// Integral of |F|^2 over the unit sphere, 2 pi times a quadrature in cos(theta).
inline double sphere_integrated_cross_section(const ScatteringModel& model, const QuadratureRule& rule) {
  std::vector<Quaternion> coeff;
  coeff.reserve(model.modes().size());
  for (const auto& m : model.modes()) coeff.push_back(amplitude_coefficient(m, model.k()));
  const double integral = rule.integrate([&](double mu) {
    const auto p = legendre_p_all(model.ell_max(), mu);
    Quaternion f;
    for (std::size_t n = 0; n < coeff.size(); ++n) f += coeff[n] * p[model.modes()[n].ell];
    return norm2(f);
  });
  return 2.0 * std::numbers::pi * integral;
}

/// Same channels and phase shifts with every Theta_l set to zero.
inline ScatteringModel complex_limit(const ScatteringModel& model) {
  std::vector<ModeParams> modes(model.modes().begin(), model.modes().end());
  for (auto& m : modes) m.theta_pol = 0.0;
  return {model.k(), std::move(modes)};
}

/// Warns when the highest listed channel still carries more than 1e-6 of sigma.
inline std::optional<std::string> truncation_warning(const ScatteringModel& model, double threshold = 1e-6) {
  if (model.modes().empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& m : model.modes()) sum += (2.0 * m.ell + 1.0) * channel_weight(m);
  const auto& last = model.modes().back();
  const double share = sum > 0.0 ? (2.0 * last.ell + 1.0) * channel_weight(last) / sum : 0.0;
  if (share > threshold) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", share);
    return "last channel ell=" + std::to_string(last.ell) + " carries fraction " + buf +
           " of the total cross section; the mode list may be truncated too early";
  }
  return std::nullopt;
}

inline void check_radius(double r, std::optional<int> ell = std::nullopt) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("radius must be positive and finite", ell);
}

/// i cos(Theta)(cos(delta) j_l(kr) - sin(delta) y_l(kr)) - sin(Theta) e^{i xi} y_l(kr) j,
/// the radial solution without its A_l prefactor.
inline Quaternion radial_bracket(const ModeParams& m, double k, double r) {
  check_radius(r, m.ell);
  const double x = k * r;
  const double jl = sph_bessel_j(m.ell, x);
  const double yl = sph_bessel_y(m.ell, x);
  const double complex_part = std::cos(m.theta_pol) * (std::cos(m.delta) * jl - std::sin(m.delta) * yl);
  return {std::complex<double>(0.0, complex_part), -std::sin(m.theta_pol) * yl * std::polar(1.0, m.xi)};
}

/// R_l(r) = A_l * radial_bracket.
inline Quaternion radial_wave(const ModeParams& m, double k, double r) {
  return a_coeff(m) * radial_bracket(m, k, r);
}

/// [Lambda e^{i phi} - conj(Lambda) e^{-i phi}] / (2kr), phi = kr - l pi/2.
inline Quaternion asymptotic_mode(const ModeParams& m, double k, double r) {
  check_radius(r, m.ell);
  const double phi = k * r - m.ell * std::numbers::pi / 2.0;
  const Quaternion lambda = lambda_coeff(m);
  return (lambda * std::polar(1.0, phi) - conjugate(lambda) * std::polar(1.0, -phi)) / (2.0 * k * r);
}

/// Incident part I(r, theta) = 1/(kr) sum Lambda_l (2l+1) i^l sin(kr - l pi/2) P_l(cos theta).
inline Quaternion incident_wave_at_cos(const ScatteringModel& model, double r, double mu) {
  const double k = model.k();
  const auto p = legendre_p_all(model.ell_max(), mu);
  Quaternion sum;
  for (const auto& m : model.modes()) {
    const double radial = std::sin(k * r - m.ell * std::numbers::pi / 2.0) / (k * r);
    sum += lambda_coeff(m) * i_power(m.ell) * ((2.0 * m.ell + 1.0) * radial * p[m.ell]);
  }
  return sum;
}

inline Quaternion incident_wave(const ScatteringModel& model, double r, double theta) {
  check_radius(r);
  check_scattering_angle(theta);
  return incident_wave_at_cos(model, r, std::cos(theta));
}

/// Analytic radial derivative of incident_wave_at_cos.
inline Quaternion incident_wave_dr_at_cos(const ScatteringModel& model, double r, double mu) {
  const double k = model.k();
  const auto p = legendre_p_all(model.ell_max(), mu);
  Quaternion sum;
  for (const auto& m : model.modes()) {
    const double phase = k * r - m.ell * std::numbers::pi / 2.0;
    const double radial = std::cos(phase) / r - std::sin(phase) / (k * r * r);
    sum += lambda_coeff(m) * i_power(m.ell) * ((2.0 * m.ell + 1.0) * radial * p[m.ell]);
  }
  return sum;
}

}  // namespace qscatter
