#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "fracfield/green.hpp"
#include "fracfield/quadrature.hpp"

using namespace fracfield;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("Fourier-side wave values and removable limit") {
  CHECK(fourier_green(Operator::wave, 1.0, 1e-9) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fourier_green(Operator::wave, 1.0, kPi) == doctest::Approx(0.0).epsilon(1e-12));
  // continuity across the Taylor/series switch near tr = 1e-4
  const double a = fourier_green(Operator::wave, 1.0, 0.99e-4);
  const double b = fourier_green(Operator::wave, 1.0, 1.01e-4);
  CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("Fourier-side heat values") {
  CHECK(fourier_green(Operator::heat, 1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(fourier_green(Operator::heat, 0.0, 5.0) == doctest::Approx(1.0));
}

TEST_CASE("bound |FG(t,.)| <= min(t, 1/r) wave, <= 1 heat") {
  for (double t : {0.3, 1.0, 2.5}) {
    for (double r : {0.01, 0.5, 1.0, 7.0, 123.0}) {
      const double w = fourier_green(Operator::wave, t, r);
      CHECK(std::abs(w) <= std::min(t, 1.0 / r) * (1.0 + 1e-12));
      CHECK(fourier_green(Operator::heat, t, r) <= 1.0);
      CHECK(fourier_green(Operator::heat, t, r) >= 0.0);
    }
    // strictly positive at moderate arguments (underflow aside)
    CHECK(fourier_green(Operator::heat, t, 3.0) > 0.0);
  }
}

TEST_CASE("physical-space values") {
  CHECK(std::get<double>(green_physical(Operator::wave, 1, 2.0, {1.0})) ==
        doctest::Approx(0.5));
  CHECK(std::get<double>(green_physical(Operator::wave, 1, 1.0, {3.0})) ==
        doctest::Approx(0.0));
  CHECK(std::get<double>(green_physical(Operator::heat, 1, 1.0, {0.0})) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-14));
  const auto d2 = std::get<double>(green_physical(Operator::wave, 2, 2.0, {1.0, 0.0}));
  CHECK(d2 == doctest::Approx(1.0 / (2.0 * kPi * std::sqrt(3.0))).epsilon(1e-14));
  const auto sigma =
      std::get<SphereSurfaceMeasure>(green_physical(Operator::wave, 3, 2.0, {0.0, 0.0, 0.0}));
  CHECK(sigma.radius == doctest::Approx(2.0));
  CHECK(sigma.total_mass == doctest::Approx(2.0));
  CHECK_THROWS_AS(green_physical(Operator::wave, 4, 1.0, {0, 0, 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("Fourier consistency d=1: transform of the wave box matches sinc") {
  // F[1/2 1_{|x|<t}](xi) = sin(t xi)/xi
  const double t = 1.3;
  for (double xi : {0.2, 1.0, 2.7, 6.0}) {
    const double numeric = integrate_legendre(
        [&](double x) { return 0.5 * std::cos(xi * x); }, -t, t, 48);
    CHECK(numeric == doctest::Approx(fourier_green(Operator::wave, t, xi)).epsilon(1e-6));
  }
}

TEST_CASE("Fourier consistency: transform of the heat kernel (d=1)") {
  const double t = 0.8;
  for (double xi : {0.0, 0.7, 2.0, 4.0}) {
    double numeric = 0.0;
    const double L = 12.0 * std::sqrt(t);
    numeric = integrate_legendre(
        [&](double x) {
          return std::cos(xi * x) * std::exp(-x * x / (2.0 * t)) /
                 std::sqrt(2.0 * kPi * t);
        },
        -L, L, 400);
    CHECK(numeric ==
          doctest::Approx(fourier_green(Operator::heat, t, xi)).epsilon(1e-8));
  }
}

TEST_CASE("oscillatory pair values and bounds") {
  auto p = ft_gt(2.0, 1.0, 1.0);
  CHECK(p.f_val == doctest::Approx(0.0));
  CHECK(p.g_val == doctest::Approx(0.0));
  p = ft_gt(2.0, 3.0, 1.0);
  CHECK(p.f_val == doctest::Approx(std::sin(6.0) - 3.0 * std::sin(2.0)).epsilon(1e-14));
  CHECK(p.g_val == doctest::Approx(std::cos(6.0) - std::cos(2.0)).epsilon(1e-14));
  for (double lam : {0.3, 1.0, 4.0}) {
    for (double tau : {0.1, 0.9, 1.5, 8.0}) {
      const auto q = ft_gt(lam, tau, 0.7);
      CHECK(std::abs(q.g_val) <= 2.0 + 1e-15);
      CHECK(std::abs(q.f_val) <= 1.0 + std::abs(tau) + 1e-15);
    }
  }
}

TEST_CASE("restricted Fourier transform of sin: anchors") {
  // tau = 0 on [0, pi]: integral sin = 2, no imaginary part
  const auto v = restricted_fourier_sin(0.0, kPi, 0.0);
  CHECK(v.real() == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-13));

  // tau -> 1 limit: I1 = sin^2(T)/2, J1 = T/2 - sin(2T)/4
  const double T = 1.9;
  const auto lim = restricted_fourier_sin(0.0, T, 1.0);
  CHECK(lim.real() == doctest::Approx(0.5 * std::sin(T) * std::sin(T)).epsilon(1e-12));
  CHECK(-lim.imag() ==
        doctest::Approx(0.5 * T - 0.25 * std::sin(2.0 * T)).epsilon(1e-12));
}

TEST_CASE("restricted Fourier transform of sin: independent oracle") {
  // oracle: half-angle decomposition sin u = (e^{iu} - e^{-iu})/(2i)
  auto oracle = [](double T, double tau) {
    auto E = [&](double d) -> std::complex<double> {
      const std::complex<double> iz{0.0, d};
      if (std::abs(d) * T < 1e-8) return {T, -0.5 * d * T * T};
      return (1.0 - std::exp(-iz * T)) / iz;
    };
    return (E(tau - 1.0) - E(tau + 1.0)) / std::complex<double>(0.0, 2.0);
  };
  for (double T : {0.5, 1.0, 2.0, 5.0}) {
    for (double tau : {-3.0, -1.0, -0.2, 0.0, 0.5, 0.99995, 1.0, 1.3, 2.0, 10.0}) {
      const auto a = restricted_fourier_sin(0.0, T, tau);
      const auto b = oracle(T, tau);
      CHECK(std::abs(a - b) < 1e-9);
    }
  }
  // windows [a, b] with a > 0
  const auto w = restricted_fourier_sin(0.7, 2.2, 1.4);
  const auto wo = oracle(2.2, 1.4) - oracle(0.7, 1.4);
  CHECK(std::abs(w - wo) < 1e-12);
}

TEST_CASE("continuity across the removable point tau = +-1") {
  // limit branch evaluated at tau = +-(1 + 2 eps) against the direct formula
  const double eps = 1e-4;
  for (double T : {0.8, 2.0, 5.0}) {
    for (double s : {1.0, -1.0}) {
      const double tau = s * (1.0 + 2.0 * eps);
      const auto branch = restricted_fourier_sin(0.0, T, tau, 3.0 * eps);
      const auto direct = restricted_fourier_sin(0.0, T, tau, eps);
      CHECK(std::abs(branch - direct) <= 1e-8);
      const double tau2 = s * (1.0 - 2.0 * eps);
      const auto branch2 = restricted_fourier_sin(0.0, T, tau2, 3.0 * eps);
      const auto direct2 = restricted_fourier_sin(0.0, T, tau2, eps);
      CHECK(std::abs(branch2 - direct2) <= 1e-8);
    }
  }
}

TEST_CASE("|I1^2 + J1^2| equals the f_t/g_t quotient form") {
  // |F_{0,T} sin|^2 = [(sin tau T - tau sin T)^2 + (cos tau T - cos T)^2]/(1-tau^2)^2
  for (double T : {0.9, 2.4}) {
    for (double tau : {0.3, 0.7, 1.6, 3.0}) {
      const auto F = restricted_fourier_sin(0.0, T, tau);
      const double lhs = std::norm(F);
      const double num = std::pow(std::sin(tau * T) - tau * std::sin(T), 2) +
                         std::pow(std::cos(tau * T) - std::cos(T), 2);
      const double rhs = num / std::pow(1.0 - tau * tau, 2);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
  }
}
