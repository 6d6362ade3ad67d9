#pragma once

// Quaternions in symplectic form q = z0 + z1 j, with z0 = x0 + x1 i and
// z1 = x2 + x3 i. Multiplication follows from j z = conj(z) j.

#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <ostream>

#include "qscatter/error.hpp"

namespace qscatter {

template <std::floating_point T>
class BasicQuaternion {
 public:
  using value_type = T;
  using complex_type = std::complex<T>;

  constexpr BasicQuaternion() = default;
  constexpr BasicQuaternion(T real) : z0_(real, T{0}) {}  // NOLINT(google-explicit-constructor)
  constexpr BasicQuaternion(complex_type z0) : z0_(z0) {}  // NOLINT(google-explicit-constructor)
  constexpr BasicQuaternion(complex_type z0, complex_type z1) : z0_(z0), z1_(z1) {}

  /// x0 + x1 i + x2 j + x3 k
  static constexpr BasicQuaternion from_components(T x0, T x1, T x2, T x3) {
    return {complex_type(x0, x1), complex_type(x2, x3)};
  }

  static constexpr BasicQuaternion unit_i() { return complex_type(T{0}, T{1}); }
  static constexpr BasicQuaternion unit_j() { return {complex_type{}, complex_type(T{1}, T{0})}; }
  static constexpr BasicQuaternion unit_k() { return {complex_type{}, complex_type(T{0}, T{1})}; }

  constexpr complex_type z0() const { return z0_; }
  constexpr complex_type z1() const { return z1_; }

  /// Read-only four-real view {x0, x1, x2, x3}.
  constexpr std::array<T, 4> components() const { return {z0_.real(), z0_.imag(), z1_.real(), z1_.imag()}; }

  constexpr BasicQuaternion& operator+=(const BasicQuaternion& o) {
    z0_ += o.z0_;
    z1_ += o.z1_;
    return *this;
  }
  constexpr BasicQuaternion& operator-=(const BasicQuaternion& o) {
    z0_ -= o.z0_;
    z1_ -= o.z1_;
    return *this;
  }
  constexpr BasicQuaternion& operator*=(T s) {
    z0_ *= s;
    z1_ *= s;
    return *this;
  }
  constexpr BasicQuaternion& operator/=(T s) {
    z0_ /= s;
    z1_ /= s;
    return *this;
  }

  friend constexpr BasicQuaternion operator-(const BasicQuaternion& q) { return {-q.z0_, -q.z1_}; }
  friend constexpr BasicQuaternion operator+(BasicQuaternion p, const BasicQuaternion& q) { return p += q; }
  friend constexpr BasicQuaternion operator-(BasicQuaternion p, const BasicQuaternion& q) { return p -= q; }
  friend constexpr BasicQuaternion operator*(BasicQuaternion q, T s) { return q *= s; }
  friend constexpr BasicQuaternion operator*(T s, BasicQuaternion q) { return q *= s; }
  friend constexpr BasicQuaternion operator/(BasicQuaternion q, T s) { return q /= s; }

  /// (a + b j)(c + d j) = (a c - b conj(d)) + (a d + b conj(c)) j
  friend constexpr BasicQuaternion operator*(const BasicQuaternion& p, const BasicQuaternion& q) {
    return {p.z0_ * q.z0_ - p.z1_ * std::conj(q.z1_), p.z0_ * q.z1_ + p.z1_ * std::conj(q.z0_)};
  }

  // A complex factor on the right passes through j as its conjugate.
  friend constexpr BasicQuaternion operator*(const BasicQuaternion& q, complex_type c) {
    return {q.z0_ * c, q.z1_ * std::conj(c)};
  }
  friend constexpr BasicQuaternion operator*(complex_type c, const BasicQuaternion& q) {
    return {c * q.z0_, c * q.z1_};
  }

  friend std::ostream& operator<<(std::ostream& os, const BasicQuaternion& q) {
    const auto c = q.components();
    return os << '(' << c[0] << ", " << c[1] << ", " << c[2] << ", " << c[3] << ')';
  }

 private:
  complex_type z0_{};
  complex_type z1_{};
};

using Quaternion = BasicQuaternion<double>;

template <std::floating_point T>
constexpr BasicQuaternion<T> multiply(const BasicQuaternion<T>& p, const BasicQuaternion<T>& q) {
  return p * q;
}

/// conj(z0 + z1 j) = conj(z0) - z1 j
template <std::floating_point T>
constexpr BasicQuaternion<T> conjugate(const BasicQuaternion<T>& q) {
  return {std::conj(q.z0()), -q.z1()};
}

template <std::floating_point T>
constexpr T norm2(const BasicQuaternion<T>& q) {
  return std::norm(q.z0()) + std::norm(q.z1());
}

template <std::floating_point T>
T norm(const BasicQuaternion<T>& q) {
  // hypot keeps the value finite for components near the overflow threshold.
  return std::hypot(std::abs(q.z0()), std::abs(q.z1()));
}

template <std::floating_point T>
BasicQuaternion<T> inverse(const BasicQuaternion<T>& q) {
  const T n2 = norm2(q);
  if (!(n2 > T{0})) {
    throw DomainError("inverse of a zero-norm quaternion");
  }
  return conjugate(q) / n2;
}

/// Coefficient of the i basis element.
template <std::floating_point T>
constexpr T im_i(const BasicQuaternion<T>& q) {
  return q.z0().imag();
}

}  // namespace qscatter
