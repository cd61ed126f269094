#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracfield/hurst.hpp"

using namespace fracfield;

namespace {

// Independent Gamma oracle (Lanczos, g = 7), kept free of <cmath> tgamma.
double lanczos_gamma(double x) {
  static const double c[9] = {0.99999999999980993,  676.5203681218851,
                              -1259.1392167224028,  771.32342877765313,
                              -176.61502916214059,  12.507343278686905,
                              -0.13857109526572012, 9.9843695780195716e-6,
                              1.5056327351493116e-7};
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  }
  x -= 1.0;
  double a = c[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += c[i] / (x + i);
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

}  // namespace

TEST_CASE("derived constants at H = 0.75") {
  const HurstModel m = hurst_constants(0.75);
  CHECK(m.alpha_h == doctest::Approx(0.375).epsilon(1e-15));
  const double c_h_oracle =
      lanczos_gamma(2.5) * std::sin(0.75 * std::numbers::pi) / (2.0 * std::numbers::pi);
  CHECK(m.c_h == doctest::Approx(c_h_oracle).epsilon(1e-10));
  CHECK(m.c_h == doctest::Approx(0.14960335).epsilon(1e-6));
}

TEST_CASE("d_H = 2 pi c_H across an H grid") {
  for (double h = 0.51; h < 0.995; h += 0.01) {
    const HurstModel m = hurst_constants(h);
    CHECK(m.d_h == doctest::Approx(2.0 * std::numbers::pi * m.c_h).epsilon(1e-10));
    CHECK(m.alpha_h > 0.0);
    CHECK(m.alpha_h < 1.0);
  }
}

TEST_CASE("alpha_H vanishes toward H = 1/2") {
  CHECK(hurst_constants(0.5 + 1e-9).alpha_h == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("out-of-range H rejected") {
  CHECK_THROWS_AS(hurst_constants(0.5), std::domain_error);
  CHECK_THROWS_AS(hurst_constants(1.0), std::domain_error);
  CHECK_THROWS_AS(hurst_constants(0.3), std::domain_error);
}

TEST_CASE("fBm covariance") {
  const HurstModel m = hurst_constants(0.75);
  CHECK(covariance_rh(1.0, 1.0, m) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(covariance_rh(2.0, 1.0, m) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(covariance_rh(3.0, 0.0, m) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(covariance_rh(1.0, 2.0, m) == doctest::Approx(covariance_rh(2.0, 1.0, m)));
  CHECK(covariance_rh(1.7, 1.7, m) ==
        doctest::Approx(std::pow(1.7, 1.5)).epsilon(1e-14));
  CHECK_THROWS_AS(covariance_rh(-1.0, 0.5, m), std::domain_error);
}
