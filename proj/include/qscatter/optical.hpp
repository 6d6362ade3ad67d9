#pragma once

// Probability current, flux through a large sphere and the Im[iF] relation,
// run as a consistency experiment: the three cross-section routes and the
// flux residuals are reported side by side. Only the closed form against the
// integral of |F|^2 is asserted.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qscatter/error.hpp"
#include "qscatter/partial_waves.hpp"
#include "qscatter/quaternion.hpp"
#include "qscatter/special_functions.hpp"

namespace qscatter {

using Vec3 = std::array<double, 3>;
using QuaternionVec3 = std::array<Quaternion, 3>;

/// (1/2)[conj(psi) Pi psi + conj(Pi psi) psi] per axis, Pi psi = -grad(psi) i,
/// before discarding the (vanishing) imaginary parts.
inline QuaternionVec3 current_density_terms(const Quaternion& psi, const QuaternionVec3& grad_psi) {
  QuaternionVec3 out;
  const Quaternion psi_bar = conjugate(psi);
  for (std::size_t a = 0; a < 3; ++a) {
    const Quaternion pi_psi = -(grad_psi[a] * Quaternion::unit_i());
    out[a] = 0.5 * (psi_bar * pi_psi + conjugate(pi_psi) * psi);
  }
  return out;
}

/// Real-Hilbert-space probability current with hbar = m = 1.
inline Vec3 probability_current(const Quaternion& psi, const QuaternionVec3& grad_psi) {
  const auto terms = current_density_terms(psi, grad_psi);
  return {terms[0].z0().real(), terms[1].z0().real(), terms[2].z0().real()};
}

/// Radial current J.r_hat for the asymptotic wave I + F e^{ikr}/r at (r, mu = cos theta).
inline double radial_current(const ScatteringModel& model, double r, double mu) {
  const double k = model.k();
  const Quaternion f = amplitude_at_cos(model, mu);
  const std::complex<double> outgoing = std::polar(1.0, k * r) / r;
  const std::complex<double> outgoing_dr = outgoing * std::complex<double>(-1.0 / r, k);
  const Quaternion psi = incident_wave_at_cos(model, r, mu) + f * outgoing;
  const Quaternion dpsi = incident_wave_dr_at_cos(model, r, mu) + f * outgoing_dr;
  return probability_current(psi, {dpsi, Quaternion{}, Quaternion{}})[0];
}

/// Net outward flux of J through the sphere of radius r.
inline double flux_integral(const ScatteringModel& model, double r, const QuadratureRule& rule) {
  check_radius(r);
  return 2.0 * std::numbers::pi * r * r * rule.integrate([&](double mu) { return radial_current(model, r, mu); });
}

/// Integral of P_l(cos theta) sin(theta) over [0, pi]: 2 for l = 0, else 0.
inline double legendre_sin_integral(int ell) {
  if (ell < 0) throw DomainError("Legendre degree must be non-negative", ell);
  const auto rule = gauss_legendre(std::max<std::size_t>(default_quadrature_order, static_cast<std::size_t>(ell) / 2 + 2));
  return rule.integrate([ell](double mu) { return legendre_p(ell, mu); });
}

/// 2 pi times the integral of im_i(i F) sin(theta) over [0, pi].
inline double optical_cross_section(const ScatteringModel& model, const QuadratureRule& rule) {
  const Quaternion i = Quaternion::unit_i();
  return 2.0 * std::numbers::pi * rule.integrate([&](double mu) { return im_i(i * amplitude_at_cos(model, mu)); });
}

struct ConsistencyReport {
  double k = 0.0;
  double sigma_closed = 0.0;
  double sigma_quadrature = 0.0;
  double sigma_optical = 0.0;
  std::vector<std::pair<double, double>> flux_residuals;  // (r, net flux)
  std::vector<std::string> notes;
};

inline constexpr double identity_tolerance = 1e-10;

inline ConsistencyReport build_consistency_report(const ScatteringModel& model, const std::vector<double>& radii,
                                                  const QuadratureRule& rule) {
  if (radii.size() < 4) throw std::invalid_argument("consistency report needs at least 4 radii");
  for (std::size_t n = 0; n < radii.size(); ++n) {
    if (!(radii[n] > 0.0) || !std::isfinite(radii[n])) throw std::invalid_argument("radii must be positive");
    if (n > 0 && !(radii[n] > radii[n - 1])) throw std::invalid_argument("radii must be strictly increasing");
  }
  if (rule.size() < static_cast<std::size_t>(std::max(model.ell_max(), 0)) + 1) {
    throw std::invalid_argument("quadrature order below ell_max + 1 cannot integrate |F|^2 exactly");
  }

  ConsistencyReport report;
  report.k = model.k();
  report.sigma_closed = total_cross_section(model);
  report.sigma_quadrature = sphere_integrated_cross_section(model, rule);
  report.sigma_optical = optical_cross_section(model, rule);
  for (double r : radii) report.flux_residuals.emplace_back(r, flux_integral(model, r, rule));

  const double mismatch = std::abs(report.sigma_closed - report.sigma_quadrature);
  if (mismatch > identity_tolerance * std::abs(report.sigma_closed)) {
    throw DomainError("closed-form and quadrature cross sections disagree beyond 1e-10 relative");
  }

  char buf[160];
  const double doubled = sphere_integrated_cross_section(model, gauss_legendre(2 * rule.size()));
  std::snprintf(buf, sizeof buf, "quadrature order %zu; doubling the order changes sigma_quadrature by %.3g",
                rule.size(), std::abs(doubled - report.sigma_quadrature));
  report.notes.emplace_back(buf);
  report.notes.emplace_back(
      "sigma_optical = 2 pi int Im_i[i F] sin(theta) dtheta as printed; it has dimensions of length while "
      "sigma_closed has length^2 (no compensating 1/k inserted)");
  if (report.sigma_closed > 0.0) {
    std::snprintf(buf, sizeof buf, "k * sigma_optical / sigma_closed = %.17g",
                  report.k * report.sigma_optical / report.sigma_closed);
    report.notes.emplace_back(buf);
  }
  report.notes.emplace_back("int_0^pi P_l(cos theta) sin(theta) dtheta uses the exact value 2 delta_l0");
  report.notes.emplace_back(
      "flux_residual is the net outward flux of J through the sphere of radius r for the wave I + F e^{ikr}/r; "
      "oscillating terms are not averaged");
  return report;
}

}  // namespace qscatter
