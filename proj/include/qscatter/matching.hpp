#pragma once

// Boundary matching at r = a. The quaternionic log-derivative of R_l,
//
//   (1/R_l) dR_l/dr |_{r=a} = Gamma_l = Gamma0_l + Gamma1_l j,
//
// is evaluated two ways: the analytic closed forms for Gamma0 and Gamma1, and a
// central-difference oracle on radial_wave in both multiplication orders.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "qscatter/error.hpp"
#include "qscatter/partial_waves.hpp"
#include "qscatter/quaternion.hpp"
#include "qscatter/special_functions.hpp"

namespace qscatter {

/// Relative threshold below which a two-term denominator counts as zero.
inline constexpr double singular_threshold = 1e-12;

struct MatchingConstant {
  double gamma0;
  std::complex<double> gamma1;
  int ell;
  double a;
  double k;
};

namespace detail {

inline void check_matching_args(int ell, double k, double a) {
  if (!(k > 0.0) || !(a > 0.0) || !std::isfinite(k * a)) throw DomainError("matching requires k > 0 and a > 0", ell);
}

/// t1 - t2, or SingularMatching when it is negligible against both terms.
inline double difference_or_throw(double t1, double t2, int ell, const char* what) {
  const double d = t1 - t2;
  if (!(std::abs(d) > singular_threshold * std::max(std::abs(t1), std::abs(t2)))) {
    throw SingularMatching(std::string("vanishing denominator in ") + what, ell);
  }
  return d;
}

}  // namespace detail

/// Real part of the matching constant:
///
///   k [y y' tan^2 T + (y' sin d + j' cos d)(j cos d - y sin d)]
///     / [y^2 tan^2 T - (y sin d - j cos d)^2]
///
/// with Bessel functions at x = k a.
inline double gamma0(const ModeParams& m, double k, double a) {
  detail::check_matching_args(m.ell, k, a);
  const auto [j, jp, y, yp] = bessel_values(m.ell, k * a);
  const double t2 = std::tan(m.theta_pol) * std::tan(m.theta_pol);
  const double c = std::cos(m.delta);
  const double s = std::sin(m.delta);
  const double num = y * yp * t2 + (yp * s + jp * c) * (j * c - y * s);
  const double mixed = y * s - j * c;
  const double den = detail::difference_or_throw(y * y * t2, mixed * mixed, m.ell, "gamma0");
  return k * num / den;
}

/// tan T (Gamma0 y - k y') / (cos d j - sin d y) e^{i (xi + pi/2)}; exactly zero for T = 0.
inline std::complex<double> gamma1(const ModeParams& m, double k, double a) {
  detail::check_matching_args(m.ell, k, a);
  if (m.theta_pol == 0.0) return {0.0, 0.0};
  const auto [j, jp, y, yp] = bessel_values(m.ell, k * a);
  const double den = detail::difference_or_throw(std::cos(m.delta) * j, std::sin(m.delta) * y, m.ell,
                                                 "gamma1 (hard-sphere degenerate point)");
  const double g0 = gamma0(m, k, a);
  return std::tan(m.theta_pol) * (g0 * y - k * yp) / den * std::polar(1.0, m.xi + std::numbers::pi / 2.0);
}

inline MatchingConstant matching_constant(const ModeParams& m, double k, double a) {
  return {gamma0(m, k, a), gamma1(m, k, a), m.ell, a, k};
}

/// Log-derivative of the complex radial function cos d j_l - sin d y_l.
inline double complex_log_derivative(int ell, double delta, double k, double a) {
  detail::check_matching_args(ell, k, a);
  const auto [j, jp, y, yp] = bessel_values(ell, k * a);
  const double c = std::cos(delta);
  const double s = std::sin(delta);
  const double den = detail::difference_or_throw(c * j, s * y, ell, "complex log-derivative");
  return k * (c * jp - s * yp) / den;
}

/// Phase shift from the matching constants:
///
///   tan d = [|G1|^2 y j - (G0 j - k j')(G0 y - k y')] / [|G1|^2 y^2 - (G0 y - k y')^2]
///
/// For |G1| = 0 this is the complex relation tan d = (G0 j - k j')/(G0 y - k y').
/// Result in (-pi/2, pi/2].
inline double delta_from_gamma(double gamma0_value, double gamma1_mag, double k, double a, int ell) {
  detail::check_matching_args(ell, k, a);
  const auto [j, jp, y, yp] = bessel_values(ell, k * a);
  const double g1sq = gamma1_mag * gamma1_mag;
  const double p = gamma0_value * j - k * jp;
  const double q = gamma0_value * y - k * yp;
  const double num = g1sq * y * j - p * q;
  const double den = detail::difference_or_throw(g1sq * y * y, q * q, ell, "delta_from_gamma");
  const double d = std::atan(num / den);
  return d == -std::numbers::pi / 2.0 ? std::numbers::pi / 2.0 : d;
}

/// Order of the quaternionic quotient: left is R^-1 R', right is R' R^-1.
enum class Convention { left, right };

inline const char* to_string(Convention c) { return c == Convention::left ? "left" : "right"; }

/// Central-difference log-derivative of an arbitrary radial function.
template <class Radial>
Quaternion log_derivative(Radial&& radial, double a, Convention convention, double step) {
  if (!(step > 0.0) || !(a > step)) throw DomainError("log-derivative needs 0 < step < a");
  const Quaternion value = radial(a);
  if (norm(value) < 1e-12) throw DomainError("radial function vanishes at the matching radius");
  const Quaternion derivative = (radial(a + step) - radial(a - step)) / (2.0 * step);
  return convention == Convention::left ? inverse(value) * derivative : derivative * inverse(value);
}

inline Quaternion log_derivative_numeric(const ModeParams& m, double k, double a, Convention convention,
                                         double step = 0.0) {
  if (step == 0.0) step = 1e-6 * a;
  return log_derivative([&](double r) { return radial_wave(m, k, r); }, a, convention, step);
}

/// Analytic constants against the numeric oracle. Singular analytic values are
/// NaN and named in status; disagreement is recorded, never raised.
struct MatchingResiduals {
  ModeParams mode;
  double k = 0.0;
  double a = 0.0;
  double gamma0 = 0.0;
  std::complex<double> gamma1;
  Quaternion numeric_left;
  Quaternion numeric_right;
  double gamma0_residual_left = 0.0;
  double gamma0_residual_right = 0.0;
  double gamma1_residual_left = 0.0;
  double gamma1_residual_right = 0.0;
  std::string status = "ok";
};

inline MatchingResiduals matching_residual_report(const ModeParams& m, double k, double a) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  MatchingResiduals r;
  r.mode = m;
  r.k = k;
  r.a = a;
  r.numeric_left = log_derivative_numeric(m, k, a, Convention::left);
  r.numeric_right = log_derivative_numeric(m, k, a, Convention::right);
  try {
    r.gamma0 = gamma0(m, k, a);
  } catch (const SingularMatching&) {
    r.gamma0 = nan;
    r.status = "gamma0_singular";
  }
  try {
    r.gamma1 = gamma1(m, k, a);
  } catch (const SingularMatching&) {
    r.gamma1 = {nan, nan};
    if (r.status == "ok") r.status = "gamma1_degenerate";
  }
  r.gamma0_residual_left = std::abs(r.gamma0 - r.numeric_left.z0().real());
  r.gamma0_residual_right = std::abs(r.gamma0 - r.numeric_right.z0().real());
  r.gamma1_residual_left = std::abs(r.gamma1 - r.numeric_left.z1());
  r.gamma1_residual_right = std::abs(r.gamma1 - r.numeric_right.z1());
  return r;
}

}  // namespace qscatter
