#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "fracfield/hurst.hpp"
#include "fracfield/time_kernel.hpp"

using namespace fracfield;

namespace {

const QuadratureSpec spec{};

// Product-integration brute force for alpha_H int int f(u) g(v) |u-v|^{2H-2}:
// exact cell-averaged kernel times midpoint values of the smooth factors.
double brute_force_ip(const std::function<double(double)>& f,
                      const std::function<double(double)>& g, double T,
                      double H, int n) {
  const double h = T / n;
  const double p = 2.0 * H;
  auto D = [&](double z) { return std::pow(std::abs(z), p); };
  std::vector<double> fv(n), gv(n);
  for (int i = 0; i < n; ++i) {
    fv[i] = f((i + 0.5) * h);
    gv[i] = g((i + 0.5) * h);
  }
  // cell-pair kernel integral depends on i - j only
  std::vector<double> W(2 * n - 1);
  for (int k = -(n - 1); k <= n - 1; ++k) {
    const double a = k * h;
    W[k + n - 1] = (D(a + h) - 2.0 * D(a) + D(a - h)) / (p * (p - 1.0));
  }
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += gv[j] * W[i - j + n - 1];
    acc += fv[i] * row;
  }
  return H * (2.0 * H - 1.0) * acc;
}

}  // namespace

TEST_CASE("fractional integral anchors") {
  const auto one = TimeFunction::constant(1.0, 1.0);
  // f == 1: I^alpha(1)(s) = (T-s)^alpha / Gamma(alpha+1)
  const auto v = frac_integral_right(one, 0.5, 0.0, 1.0, spec);
  CHECK(v.real() == doctest::Approx(1.0 / std::tgamma(1.5)).epsilon(1e-10));
  CHECK(std::abs(v.imag()) < 1e-14);

  const auto mid = frac_integral_right(one, 0.3, 0.4, 1.0, spec);
  CHECK(mid.real() ==
        doctest::Approx(std::pow(0.6, 0.3) / std::tgamma(1.3)).epsilon(1e-10));

  CHECK(std::abs(frac_integral_right(TimeFunction::zero(1.0), 0.5, 0.2, 1.0, spec)) ==
        doctest::Approx(0.0));
  CHECK(std::abs(frac_integral_right(one, 0.5, 1.0, 1.0, spec)) == doctest::Approx(0.0));
}

TEST_CASE("fractional integral flags non-integrable input") {
  // 1/u is not integrable against (u-0)^{alpha-1} near u = 0 ... use f(u)=u^{-1.2}
  auto bad = TimeFunction::custom(
      [](double u) { return std::complex<double>(std::pow(std::max(u, 1e-300), -1.2), 0.0); },
      1.0);
  CHECK_THROWS_AS(frac_integral_right(bad, 0.1, 0.0, 1.0, spec), std::runtime_error);
}

TEST_CASE("transfer operator: indicator reproduces the fBm kernel identity") {
  // int_0^T (K*_H 1_[0,t])(s)^2 ds = t^{2H}
  for (double H : {0.6, 0.75, 0.9}) {
    const auto m = hurst_constants(H);
    const double T = 1.0, t = 0.7;
    const auto K = transfer_kh(TimeFunction::indicator(t, T), m, T, spec);
    // pull the s^{1-2H} factor into the Jacobi weight; grading handles the
    // (t-s)^{2H-1} behaviour at the right end
    auto f = [&](double s) {
      return std::norm(K(s)) * std::pow(s, 2.0 * H - 1.0);
    };
    const double acc =
        integrate_endpoint_singular(f, 0.0, t, 1.0 - 2.0 * H, 0.0, 30, 20);
    CHECK(acc == doctest::Approx(std::pow(t, 2.0 * H)).epsilon(2e-5));
  }
}

TEST_CASE("transfer operator: isometry on indicator pairs gives R_H") {
  const auto m = hurst_constants(0.7);
  const double T = 1.0, t1 = 0.9, t2 = 0.5;
  const auto K1 = transfer_kh(TimeFunction::indicator(t1, T), m, T, spec);
  const auto K2 = transfer_kh(TimeFunction::indicator(t2, T), m, T, spec);
  auto f = [&](double s) {
    return (K1(s) * std::conj(K2(s))).real() * std::pow(s, 2.0 * m.h - 1.0);
  };
  const double got =
      integrate_endpoint_singular(f, 0.0, t2, 1.0 - 2.0 * m.h, 0.0, 30, 20);
  CHECK(got == doctest::Approx(covariance_rh(t1, t2, m)).epsilon(2e-5));
}

TEST_CASE("transfer operator domain error at s = 0 and zero input") {
  const auto m = hurst_constants(0.75);
  const auto K = transfer_kh(TimeFunction::sine(1.0), m, 1.0, spec);
  CHECK_THROWS_AS(K(0.0), std::domain_error);
  const auto KZ = transfer_kh(TimeFunction::zero(1.0), m, 1.0, spec);
  CHECK(std::abs(KZ(0.5)) == doctest::Approx(0.0));
}

TEST_CASE("norm anchors: indicator and identity") {
  for (double H : {0.55, 0.75, 0.95}) {
    const auto m = hurst_constants(H);
    for (double t : {0.5, 1.0, 2.0}) {
      const auto ind = TimeFunction::indicator(t, t);
      const auto v = inner_product_time(ind, ind, m, t, IpBackend::direct, spec);
      CHECK(v.real() == doctest::Approx(std::pow(t, 2.0 * H)).epsilon(1e-9));
    }
    const auto id = TimeFunction::identity(1.0);
    const auto nid = inner_product_time(id, id, m, 1.0, IpBackend::direct, spec);
    CHECK(nid.real() == doctest::Approx(1.0 / (2.0 * H + 2.0)).epsilon(1e-8));
  }
}

TEST_CASE("indicator pair inner product equals R_H(t, s)") {
  const auto m = hurst_constants(0.65);
  const double T = 2.0;
  const auto f = TimeFunction::indicator(1.7, T);
  const auto g = TimeFunction::indicator(0.6, T);
  for (auto bk : {IpBackend::direct, IpBackend::spectral, IpBackend::transfer}) {
    const auto v = inner_product_time(f, g, m, T, bk, spec);
    CHECK(v.real() == doctest::Approx(covariance_rh(1.7, 0.6, m)).epsilon(2e-5));
    CHECK(std::abs(v.imag()) < 1e-9);
  }
}

TEST_CASE("backend triple agreement on the family") {
  for (double H : {0.55, 0.75, 0.95}) {
    const auto m = hurst_constants(H);
    for (double T : {1.0, std::numbers::pi}) {
      const TimeFunction fam[] = {
          TimeFunction::indicator(T, T), TimeFunction::identity(T),
          TimeFunction::sine(T), TimeFunction::cosine(T),
          TimeFunction::exp_decay(1.0, T)};
      for (const auto& f : fam) {
        const double d =
            inner_product_time(f, f, m, T, IpBackend::direct, spec).real();
        const double tr =
            inner_product_time(f, f, m, T, IpBackend::transfer, spec).real();
        const double sp =
            inner_product_time(f, f, m, T, IpBackend::spectral, spec).real();
        CHECK(d == doctest::Approx(tr).epsilon(1e-5));
        CHECK(d == doctest::Approx(sp).epsilon(1e-5));
        CHECK(tr == doctest::Approx(sp).epsilon(1e-5));
        CHECK(d >= 0.0);
      }
    }
  }
}

TEST_CASE("self test runs clean at default settings") {
  const auto m = hurst_constants(0.8);
  CHECK(backend_self_test(m, 1.0, spec, 1e-5) < 1e-5);
}

TEST_CASE("complex-valued functions supported") {
  const auto m = hurst_constants(0.7);
  const double T = 1.0;
  const auto f = TimeFunction::cis(2.0, T);
  const auto g = TimeFunction::cis(0.7, T);
  const auto d = inner_product_time(f, g, m, T, IpBackend::direct, spec);
  const auto s = inner_product_time(f, g, m, T, IpBackend::spectral, spec);
  CHECK(std::abs(d - s) < 1e-5 * std::abs(d));
  // self inner product of a complex function is real and positive
  const auto n = inner_product_time(f, f, m, T, IpBackend::direct, spec);
  CHECK(n.real() > 0.0);
  CHECK(std::abs(n.imag()) < 1e-10);
}

TEST_CASE("brute-force oracle agrees with the direct backend") {
  const auto m = hurst_constants(0.7);
  const double T = 1.0;
  const double bf = brute_force_ip([](double u) { return std::sin(u); },
                                   [](double u) { return std::sin(u); }, T, 0.7,
                                   4000);
  const auto d = inner_product_time(TimeFunction::sine(T), TimeFunction::sine(T),
                                    m, T, IpBackend::direct, spec);
  CHECK(d.real() == doctest::Approx(bf).epsilon(1e-5));
}

TEST_CASE("norm inequality against the L^{1/H} norm with b_H = 2") {
  for (double H : {0.55, 0.75, 0.95}) {
    const auto m = hurst_constants(H);
    const double T = 1.0;
    const TimeFunction fam[] = {TimeFunction::indicator(T, T),
                                TimeFunction::identity(T), TimeFunction::sine(T),
                                TimeFunction::exp_decay(1.0, T)};
    for (const auto& f : fam) {
      const double nrm =
          inner_product_time(f, f, m, T, IpBackend::direct, spec).real();
      double lp = 0.0;  // integral |f|^{1/H}
      const int n = 20000;
      for (int i = 0; i < n; ++i) {
        const double u = (i + 0.5) * T / n;
        lp += std::pow(std::abs(f(u)), 1.0 / H) * T / n;
      }
      const double rhs = 4.0 * std::pow(lp, 2.0 * H);
      CHECK(nrm <= rhs * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("horizon mismatch rejected") {
  const auto m = hurst_constants(0.75);
  CHECK_THROWS_AS(inner_product_time(TimeFunction::sine(1.0), TimeFunction::sine(2.0),
                                     m, 2.0, IpBackend::direct, spec),
                  std::invalid_argument);
}
