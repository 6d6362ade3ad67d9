#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "qscatter/hard_sphere.hpp"
#include "qscatter/matching.hpp"
#include "support/oracles.hpp"

using namespace qscatter;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

/// Bessel values from libstdc++, derivatives by the downward-order relation.
struct StdBessel {
  double j, jp, y, yp;
};

StdBessel std_bessel(int ell, double x) {
  const double j = std::sph_bessel(ell, x);
  const double y = std::sph_neumann(ell, x);
  if (ell == 0) return {j, -std::sph_bessel(1, x), y, -std::sph_neumann(1, x)};
  return {j, std::sph_bessel(ell - 1, x) - (ell + 1.0) / x * j, y, std::sph_neumann(ell - 1, x) - (ell + 1.0) / x * y};
}

double gamma0_reference(int ell, double delta, double theta, double k, double a) {
  const auto b = std_bessel(ell, k * a);
  const double t2 = std::pow(std::tan(theta), 2);
  const double num = b.y * b.yp * t2 + (b.yp * std::sin(delta) + b.jp * std::cos(delta)) *
                                           (b.j * std::cos(delta) - b.y * std::sin(delta));
  const double den = b.y * b.y * t2 - std::pow(b.y * std::sin(delta) - b.j * std::cos(delta), 2);
  return k * num / den;
}

ModeParams hard_sphere_mode(int ell, double kR, double xi = 0.0) {
  return {ell, phase_shift(ell, kR), polarization_angle(ell, kR), xi};
}

}  // namespace

TEST_CASE("gamma0 at hard-sphere parameters is k y'/y", "[matching]") {
  const double R = 1.0;
  for (double k : {0.05, 0.2, 0.5}) {
    for (int ell = 0; ell <= 5; ++ell) {
      const auto m = hard_sphere_mode(ell, k * R);
      const auto b = bessel_values(ell, k * R);
      INFO("k=" << k << " ell=" << ell);
      REQUIRE(oracle::rel_err(gamma0(m, k, R), k * b.yp / b.y) <= 1e-10);
    }
  }
}

TEST_CASE("gamma0 matches a re-evaluation with libstdc++ Bessel functions", "[matching]") {
  CHECK_THAT(gamma0({0, 0.0, pi / 4, 0.0}, 1.0, 1.0), WithinRel(gamma0_reference(0, 0.0, pi / 4, 1.0, 1.0), 1e-12));
  std::mt19937_64 rng(41);
  for (int n = 0; n < 300; ++n) {
    const auto m = oracle::random_mode(rng, n % 6);
    const double k = 0.5 + (n % 7) * 0.5;
    const double a = 0.5 + (n % 5) * 0.7;
    double expected = 0.0;
    try {
      expected = gamma0_reference(m.ell, m.delta, m.theta_pol, k, a);
      const double got = gamma0(m, k, a);
      INFO("n=" << n);
      REQUIRE(oracle::rel_err(got, expected) <= 1e-8);
    } catch (const SingularMatching&) {
      // random draw landed on a singular denominator
    }
  }
}

TEST_CASE("gamma0 has a finite complex limit", "[matching]") {
  const double g = gamma0({2, 0.4, 0.0, 0.0}, 1.1, 1.5);
  CHECK(std::isfinite(g));
  CHECK_THAT(gamma0({2, 0.4, 1e-9, 0.0}, 1.1, 1.5), WithinRel(g, 1e-12));
}

TEST_CASE("gamma1", "[matching]") {
  // Exactly zero for Theta = 0.
  std::mt19937_64 rng(42);
  for (int n = 0; n < 200; ++n) {
    auto m = oracle::random_mode(rng, n % 5);
    m.theta_pol = 0.0;
    REQUIRE(gamma1(m, 1.3, 0.9) == std::complex<double>(0.0, 0.0));
  }

  // Generic case against an independent re-evaluation.
  const ModeParams m{1, 0.2, 0.3, 0.1};
  const double k = 2.0;
  const double a = 1.0;
  const auto b = std_bessel(1, k * a);
  const double g0 = gamma0_reference(1, 0.2, 0.3, k, a);
  const double prefactor =
      std::tan(0.3) * (g0 * b.y - k * b.yp) / (std::cos(0.2) * b.j - std::sin(0.2) * b.y);
  const auto g1 = gamma1(m, k, a);
  CHECK_THAT(std::abs(g1), WithinRel(std::abs(prefactor), 1e-12));

  // Phase is xi + pi/2 modulo pi.
  for (int n = 0; n < 200; ++n) {
    const auto r = oracle::random_mode(rng, n % 4);
    try {
      const auto v = gamma1(r, 1.7, 1.2);
      if (std::abs(v) < 1e-300) continue;
      const double diff = std::remainder(std::arg(v) - (r.xi + pi / 2), pi);
      REQUIRE_THAT(diff, WithinAbs(0.0, 1e-12));
    } catch (const SingularMatching&) {
    }
  }
}

TEST_CASE("gamma1 is degenerate at exact hard-sphere parameters", "[matching]") {
  CHECK_THROWS_AS(gamma1(hard_sphere_mode(0, 0.3), 0.3, 1.0), SingularMatching);
  CHECK_THROWS_AS(gamma1(hard_sphere_mode(2, 0.3), 0.3, 1.0), SingularMatching);
}

TEST_CASE("matching argument checks", "[matching]") {
  CHECK_THROWS_AS(gamma0({0, 0.1, 0.1, 0.0}, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(gamma0({0, 0.1, 0.1, 0.0}, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(delta_from_gamma(1.0, 0.0, 1.0, 0.0, 0), DomainError);
}

TEST_CASE("delta_from_gamma inverts the complex relation", "[matching][property]") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> d(-1.5, 1.5);
  int checked = 0;
  for (int n = 0; n < 2000; ++n) {
    const int ell = n % 8;
    const double delta = d(rng);
    const double k = 0.5 + (n % 9) * 0.4;
    const double a = 0.3 + (n % 11) * 0.35;
    const auto b = bessel_values(ell, k * a);
    // Stay away from zeros of the complex radial function and from points
    // where Gamma0 barely depends on delta (small ka, large l).
    if (std::abs(std::cos(delta) * b.j - std::sin(delta) * b.y) < 1e-3 * std::max(std::abs(b.j), std::abs(b.y))) continue;
    if (oracle::inversion_condition(ell, delta, k, a) > 1e6) continue;
    const double g = complex_log_derivative(ell, delta, k, a);
    double back = 0.0;
    try {
      back = delta_from_gamma(g, 0.0, k, a, ell);
    } catch (const SingularMatching&) {
      continue;
    }
    INFO("ell=" << ell << " delta=" << delta << " ka=" << k * a);
    REQUIRE_THAT(std::remainder(back - delta, pi), WithinAbs(0.0, 1e-8));
    REQUIRE(back > -pi / 2);
    REQUIRE(back <= pi / 2);
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("delta_from_gamma with |gamma1| = 0 is the complex formula", "[matching]") {
  const double k = 1.2;
  const double a = 0.8;
  const auto b = bessel_values(3, k * a);
  const double g0 = 0.37;
  CHECK_THAT(std::tan(delta_from_gamma(g0, 0.0, k, a, 3)), WithinRel((g0 * b.j - k * b.jp) / (g0 * b.y - k * b.yp), 1e-12));
}

TEST_CASE("hard-sphere triple consistency", "[matching]") {
  const double R = 1.0;
  for (double k : {0.1, 0.5}) {
    for (int ell = 0; ell <= 4; ++ell) {
      const double kR = k * R;
      const auto m = hard_sphere_mode(ell, kR);
      const auto b = bessel_values(ell, kR);
      const double g0 = gamma0(m, k, R);
      REQUIRE(oracle::rel_err(g0, k * b.yp / b.y) <= 1e-8);
      // At |gamma1| = 0 this input makes the complex formula 0/0; any nonzero
      // |gamma1| selects tan(delta) = j/y.
      for (double g1 : {1e-3, 0.5, 10.0}) {
        REQUIRE_THAT(delta_from_gamma(g0, g1, k, R, ell), WithinAbs(std::atan(b.j / b.y), 1e-8));
      }
      CHECK_THROWS_AS(delta_from_gamma(k * b.yp / b.y, 0.0, k, R, ell), SingularMatching);
    }
  }
}

TEST_CASE("delta_from_gamma random inputs stay in range", "[matching][property]") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> g(-5.0, 5.0);
  std::uniform_real_distribution<double> g1(0.0, 3.0);
  for (int n = 0; n < 2000; ++n) {
    try {
      const double d = delta_from_gamma(g(rng), g1(rng), 1.0 + 0.1 * (n % 10), 0.5 + 0.2 * (n % 7), n % 6);
      REQUIRE(std::isfinite(d));
      REQUIRE(d > -pi / 2);
      REQUIRE(d <= pi / 2);
    } catch (const SingularMatching&) {
    }
  }
}

TEST_CASE("numeric log-derivative in the complex limit", "[matching]") {
  std::mt19937_64 rng(45);
  for (int n = 0; n < 200; ++n) {
    auto m = oracle::random_mode(rng, n % 6);
    m.theta_pol = 0.0;
    const double k = 1.0 + 0.2 * (n % 5);
    const double a = 1.0 + 0.3 * (n % 4);
    const auto b = bessel_values(m.ell, k * a);
    if (std::abs(std::cos(m.delta) * b.j - std::sin(m.delta) * b.y) < 1e-2 * std::max(std::abs(b.j), std::abs(b.y))) continue;
    const auto left = log_derivative_numeric(m, k, a, Convention::left);
    const auto right = log_derivative_numeric(m, k, a, Convention::right);
    const double expected = complex_log_derivative(m.ell, m.delta, k, a);
    INFO("n=" << n);
    REQUIRE(oracle::quat_dist(left, right) <= 1e-6 * std::max(1.0, std::abs(expected)));
    REQUIRE_THAT(left.z0().real(), WithinAbs(expected, 1e-6 * std::max(1.0, std::abs(expected))));
    REQUIRE(left.z1() == std::complex<double>(0.0, 0.0));
  }
}

TEST_CASE("numeric log-derivative of a free wave", "[matching]") {
  for (int ell = 0; ell <= 4; ++ell) {
    const double k = 1.5;
    const double a = 1.1;
    const auto b = bessel_values(ell, k * a);
    const auto d = log_derivative_numeric({ell, 0.0, 0.0, 0.0}, k, a, Convention::left);
    REQUIRE_THAT(d.z0().real(), WithinRel(k * b.jp / b.j, 1e-8));
    REQUIRE_THAT(d.z0().imag(), WithinAbs(0.0, 1e-8));
  }
}

TEST_CASE("left log-derivative ignores a constant unit prefactor", "[matching][property]") {
  std::mt19937_64 rng(46);
  for (int n = 0; n < 500; ++n) {
    const auto m = oracle::random_mode(rng, n % 6);
    const double k = 1.0 + 0.25 * (n % 4);
    const double a = 0.7 + 0.4 * (n % 5);
    const Quaternion u = oracle::random_unit_quaternion(rng);
    const auto base = [&](double r) { return radial_wave(m, k, r); };
    const auto scaled = [&](double r) { return u * radial_wave(m, k, r); };
    if (norm(base(a)) < 1e-6) continue;
    // 1e-6 a sits on the rounding floor of the difference quotient.
    const double step = 1e-5 * a;
    const auto d1 = log_derivative(base, a, Convention::left, step);
    const auto d2 = log_derivative(scaled, a, Convention::left, step);
    REQUIRE(oracle::quat_dist(d1, d2) <= 1e-10 * std::max(1.0, norm(d1)));
  }
}

TEST_CASE("log-derivative errors", "[matching]") {
  const auto zero = [](double) { return Quaternion{}; };
  CHECK_THROWS_AS(log_derivative(zero, 1.0, Convention::left, 1e-6), DomainError);
  CHECK_THROWS_AS(log_derivative_numeric({0, 0.0, 0.0, 0.0}, 1.0, 1.0, Convention::left, 2.0), DomainError);
}

TEST_CASE("matching residual report", "[matching]") {
  SECTION("hard sphere") {
    for (int ell = 0; ell <= 3; ++ell) {
      const double k = 0.5;
      const auto r = matching_residual_report(hard_sphere_mode(ell, k), k, 1.0);
      CHECK(r.status == "gamma1_degenerate");
      CHECK(r.gamma0_residual_left < 1e-6);
      CHECK(r.gamma0_residual_right < 1e-6);
      CHECK(std::isnan(r.gamma1_residual_left));
      const auto b = bessel_values(ell, k);
      CHECK(oracle::rel_err(r.numeric_left.z0().real(), k * b.yp / b.y) <= 1e-8);
    }
  }
  SECTION("complex limit") {
    const auto r = matching_residual_report({1, 0.4, 0.0, 0.2}, 1.3, 2.0);
    CHECK(r.status == "ok");
    CHECK(r.gamma1_residual_left == 0.0);
    CHECK(r.gamma1_residual_right == 0.0);
  }
  SECTION("generic parameters are recorded, not judged") {
    const auto r = matching_residual_report({1, 0.2, 0.3, 0.1}, 2.0, 1.0);
    CHECK(r.status == "ok");
    CHECK(std::isfinite(r.gamma0_residual_left));
    CHECK(std::isfinite(r.gamma1_residual_right));
  }
}
