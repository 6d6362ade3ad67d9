#pragma once

// Spherical Bessel functions j_l, y_l and their derivatives, Legendre
// polynomials and Gauss-Legendre quadrature.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qscatter/error.hpp"

namespace qscatter {

inline constexpr int max_bessel_order = 64;
inline constexpr std::size_t default_quadrature_order = 64;

namespace detail {

// Below this argument j_l and y_l are replaced by their leading-order forms.
inline constexpr double small_argument = 1e-6;

inline void check_bessel_args(int ell, double x) {
  if (ell < 0 || ell > max_bessel_order) {
    throw DomainError("spherical Bessel order out of range [0, " + std::to_string(max_bessel_order) + "]", ell);
  }
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("spherical Bessel argument must be positive and finite", ell);
  }
}

/// (2n-1)!! with (-1)!! = 1.
inline double double_factorial_odd(int n) {
  double r = 1.0;
  for (int m = 2 * n - 1; m > 1; m -= 2) r *= m;
  return r;
}

inline double j_miller(int ell, double x) {
  // Start well above ell so the minimal solution dominates by ~2^-40.
  const int start = ell + 40 + static_cast<int>(std::sqrt(40.0 * (ell + 1)));
  constexpr double big = 1e200;
  double f_next = 0.0;
  double f = 1e-300;
  double at_ell = 0.0;
  for (int n = start; n >= 1; --n) {
    // f_{n-1} = (2n+1)/x f_n - f_{n+1}
    const double f_prev = (2.0 * n + 1.0) / x * f - f_next;
    f_next = f;
    f = f_prev;
    if (n - 1 == ell) at_ell = f;
    if (std::abs(f) > big) {
      f /= big;
      f_next /= big;
      at_ell /= big;
    }
  }
  const double f0 = f;
  const double f1 = f_next;
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  // Normalize against whichever of j0, j1 is further from a zero.
  return std::abs(j0) >= std::abs(j1) ? at_ell * (j0 / f0) : at_ell * (j1 / f1);
}

}  // namespace detail

/// Spherical Bessel function of the first kind. Miller's downward recurrence
/// when x < ell, upward recurrence otherwise.
inline double sph_bessel_j(int ell, double x) {
  detail::check_bessel_args(ell, x);
  if (x < detail::small_argument) {
    return std::pow(x, ell) / detail::double_factorial_odd(ell + 1);
  }
  const double j0 = std::sin(x) / x;
  if (ell == 0) return j0;
  if (x < ell) return detail::j_miller(ell, x);
  double prev = j0;
  double cur = std::sin(x) / (x * x) - std::cos(x) / x;
  for (int n = 1; n < ell; ++n) {
    const double next = (2.0 * n + 1.0) / x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Spherical Bessel function of the second kind, upward recurrence.
inline double sph_bessel_y(int ell, double x) {
  detail::check_bessel_args(ell, x);
  if (x < detail::small_argument) {
    return -detail::double_factorial_odd(ell) / std::pow(x, ell + 1);
  }
  const double y0 = -std::cos(x) / x;
  if (ell == 0) return y0;
  double prev = y0;
  double cur = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int n = 1; n < ell; ++n) {
    const double next = (2.0 * n + 1.0) / x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// f'_l = f_{l-1} - (l+1)/x f_l, and f'_0 = -f_1.
inline double sph_bessel_j_prime(int ell, double x) {
  detail::check_bessel_args(ell, x);
  if (ell == 0) return -sph_bessel_j(1, x);
  return sph_bessel_j(ell - 1, x) - (ell + 1.0) / x * sph_bessel_j(ell, x);
}

inline double sph_bessel_y_prime(int ell, double x) {
  detail::check_bessel_args(ell, x);
  if (ell == 0) return -sph_bessel_y(1, x);
  return sph_bessel_y(ell - 1, x) - (ell + 1.0) / x * sph_bessel_y(ell, x);
}

/// j_l, j'_l, y_l, y'_l at one argument.
struct BesselValues {
  double j;
  double jp;
  double y;
  double yp;
};

inline BesselValues bessel_values(int ell, double x) {
  return {sph_bessel_j(ell, x), sph_bessel_j_prime(ell, x), sph_bessel_y(ell, x), sph_bessel_y_prime(ell, x)};
}

/// Legendre polynomial by the three-term recurrence.
inline double legendre_p(int ell, double x) {
  if (ell < 0) throw DomainError("Legendre degree must be non-negative", ell);
  if (!(std::abs(x) <= 1.0)) throw DomainError("Legendre argument outside [-1, 1]", ell);
  if (ell == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int n = 1; n < ell; ++n) {
    const double next = ((2.0 * n + 1.0) * x * cur - n * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

/// P_0(x) .. P_lmax(x) in one pass.
inline std::vector<double> legendre_p_all(int lmax, double x) {
  if (lmax < 0) return {};
  if (!(std::abs(x) <= 1.0)) throw DomainError("Legendre argument outside [-1, 1]");
  std::vector<double> p(static_cast<std::size_t>(lmax) + 1);
  p[0] = 1.0;
  if (lmax >= 1) p[1] = x;
  for (int n = 1; n < lmax; ++n) {
    p[n + 1] = ((2.0 * n + 1.0) * x * p[n] - n * p[n - 1]) / (n + 1.0);
  }
  return p;
}

/// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
class QuadratureRule {
 public:
  QuadratureRule(std::vector<double> nodes, std::vector<double> weights)
      : nodes_(std::move(nodes)), weights_(std::move(weights)) {}

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return nodes_.size(); }

  template <class F>
  auto integrate(F&& f) const {
    using R = decltype(f(0.0));
    R sum{};
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
    return sum;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

namespace detail {

/// {P_n(x), P'_n(x)} for |x| < 1.
inline std::pair<double, double> legendre_with_derivative(std::size_t n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (std::size_t m = 1; m < n; ++m) {
    const double p2 = ((2.0 * m + 1.0) * x * p1 - m * p0) / (m + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace detail

/// Newton iteration on P_n from the Tricomi initial guesses.
inline QuadratureRule gauss_legendre(std::size_t n) {
  if (n < 2) throw DomainError("Gauss-Legendre order must be at least 2");
  std::vector<double> nodes(n);
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = detail::legendre_with_derivative(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = detail::legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  return {std::move(nodes), std::move(weights)};
}

}  // namespace qscatter
