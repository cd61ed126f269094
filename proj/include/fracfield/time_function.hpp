#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "fracfield/quadrature.hpp"

namespace fracfield {

/// Boundary/interior jump data of a function on [0, T], feeding the
/// large-frequency asymptotics of its restricted Fourier transform:
///   F f(tau) ~ sum_j e^{-i tau x_j} [ d0_j/(i tau) + d1_j/(i tau)^2 + d2_j/(i tau)^3 ].
/// At x = 0 the d's are f(0+), f'(0+), f''(0+); at x = T their negatives at
/// T-; at an interior break the jump sizes f^{(k)}(x+) - f^{(k)}(x-).
struct JumpData {
  double x = 0.0;
  std::complex<double> d0{0.0, 0.0};
  std::complex<double> d1{0.0, 0.0};
  std::complex<double> d2{0.0, 0.0};
};

/// A function on [0, T] as every temporal operation consumes it: an
/// evaluation rule plus the structure the quadrature backends exploit
/// (smoothness breakpoints, an analytic restricted Fourier transform when
/// one exists, jump data for spectral tails, oscillation scale for panel
/// sizing). Factories cover the test family; custom() wraps a plain rule
/// and derives jump data by one-sided finite differences.
struct TimeFunction {
  std::function<std::complex<double>(double)> eval;
  double horizon = 1.0;
  bool real_valued = true;
  double osc_scale = 1.0;               // ~ sup |f'|/|f|, sizes quadrature panels
  std::vector<double> breaks;           // interior smoothness breakpoints
  std::vector<JumpData> jumps;
  std::function<std::complex<double>(double)> analytic_ft;  // F_{0,T} f, optional

  std::complex<double> operator()(double u) const { return eval(u); }
  bool has_analytic_ft() const { return static_cast<bool>(analytic_ft); }

  /// F_{0,T} f(tau) = integral_0^T e^{-i tau u} f(u) du; analytic rule when
  /// present, oscillation-resolved panel quadrature otherwise.
  std::complex<double> restricted_ft(double tau, const QuadratureSpec& spec) const;

  static TimeFunction indicator(double t, double T);
  static TimeFunction identity(double T);
  static TimeFunction sine(double T);
  static TimeFunction cosine(double T);
  static TimeFunction sine_scaled(double r, double T);  // u -> sin(r u)
  static TimeFunction exp_decay(double c, double T);    // u -> exp(-c u)
  static TimeFunction constant(std::complex<double> c, double T);
  static TimeFunction cis(double omega, double T);      // u -> exp(-i omega u)
  static TimeFunction zero(double T);
  static TimeFunction custom(std::function<std::complex<double>(double)> f,
                             double T, bool real_valued = true,
                             double osc_scale = 1.0);
};

/// integral_0^T e^{-i delta u} du with a series branch for small |delta| T.
std::complex<double> cexp_integral(double delta, double T);

}  // namespace fracfield
