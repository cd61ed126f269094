#include "fracfield/time_function.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracfield/green.hpp"

namespace fracfield {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

std::complex<double> cexp_integral(double delta, double T) {
  const double z = delta * T;
  if (std::abs(z) < 1e-5) {
    // T sum_k (-i z)^k / (k+1)!
    const std::complex<double> w = -kI * z;
    return T * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w * (1.0 / 24.0 + w / 120.0))));
  }
  return (1.0 - std::exp(-kI * z)) / (kI * delta);
}

std::complex<double> TimeFunction::restricted_ft(double tau,
                                                 const QuadratureSpec& spec) const {
  if (analytic_ft) return analytic_ft(tau);
  // oscillation-resolved panels over [0, T], split at breakpoints
  std::vector<double> cuts;
  cuts.push_back(0.0);
  for (double b : breaks)
    if (b > 0.0 && b < horizon) cuts.push_back(b);
  cuts.push_back(horizon);
  const double width = std::numbers::pi / (2.0 * std::max(1.0, std::abs(tau)) +
                                           2.0 * osc_scale);
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    double lo = cuts[p];
    const double hi = cuts[p + 1];
    while (lo < hi) {
      const double next = std::min(hi, lo + width);
      acc += integrate_legendre_c(
          [&](double u) { return std::exp(-kI * (tau * u)) * eval(u); },
          lo, next, spec.node_count);
      lo = next;
    }
  }
  return acc;
}

TimeFunction TimeFunction::indicator(double t, double T) {
  if (!(t > 0.0) || t > T) throw std::domain_error("indicator needs 0 < t <= T");
  TimeFunction f;
  f.eval = [t](double u) { return std::complex<double>(u <= t ? 1.0 : 0.0, 0.0); };
  f.horizon = T;
  f.osc_scale = 1.0 / t;
  if (t < T) f.breaks = {t};
  f.jumps = {{0.0, {1.0, 0.0}, {}, {}}, {t, {-1.0, 0.0}, {}, {}}};
  f.analytic_ft = [t](double tau) { return cexp_integral(tau, t); };
  return f;
}

TimeFunction TimeFunction::identity(double T) {
  TimeFunction f;
  f.eval = [](double u) { return std::complex<double>(u, 0.0); };
  f.horizon = T;
  f.osc_scale = 1.0 / T;
  f.jumps = {{0.0, {}, {1.0, 0.0}, {}}, {T, {-T, 0.0}, {-1.0, 0.0}, {}}};
  f.analytic_ft = [T](double tau) {
    const double z = tau * T;
    if (std::abs(z) < 1e-5) {
      const std::complex<double> w = -kI * z;
      return T * T * (0.5 + w * (1.0 / 3.0 + w * (0.125 + w / 30.0)));
    }
    const std::complex<double> iz{0.0, tau};
    const std::complex<double> e = std::exp(-kI * z);
    return -T * e / iz + (1.0 - e) / (iz * iz);
  };
  return f;
}

TimeFunction TimeFunction::sine(double T) {
  TimeFunction f;
  f.eval = [](double u) { return std::complex<double>(std::sin(u), 0.0); };
  f.horizon = T;
  f.osc_scale = 1.0;
  const double s = std::sin(T), c = std::cos(T);
  f.jumps = {{0.0, {}, {1.0, 0.0}, {}}, {T, {-s, 0.0}, {-c, 0.0}, {s, 0.0}}};
  f.analytic_ft = [T](double tau) { return restricted_fourier_sin(0.0, T, tau); };
  return f;
}

TimeFunction TimeFunction::cosine(double T) {
  TimeFunction f;
  f.eval = [](double u) { return std::complex<double>(std::cos(u), 0.0); };
  f.horizon = T;
  f.osc_scale = 1.0;
  const double s = std::sin(T), c = std::cos(T);
  f.jumps = {{0.0, {1.0, 0.0}, {}, {-1.0, 0.0}}, {T, {-c, 0.0}, {s, 0.0}, {c, 0.0}}};
  f.analytic_ft = [T](double tau) {
    return 0.5 * (cexp_integral(tau - 1.0, T) + cexp_integral(tau + 1.0, T));
  };
  return f;
}

TimeFunction TimeFunction::sine_scaled(double r, double T) {
  if (!(r > 0.0)) throw std::domain_error("sine_scaled needs r > 0");
  TimeFunction f;
  f.eval = [r](double u) { return std::complex<double>(std::sin(r * u), 0.0); };
  f.horizon = T;
  f.osc_scale = r;
  const double s = std::sin(r * T), c = std::cos(r * T);
  f.jumps = {{0.0, {}, {r, 0.0}, {}},
             {T, {-s, 0.0}, {-r * c, 0.0}, {r * r * s, 0.0}}};
  f.analytic_ft = [r, T](double tau) {
    return restricted_fourier_sin(0.0, r * T, tau / r) / r;
  };
  return f;
}

TimeFunction TimeFunction::exp_decay(double c, double T) {
  if (!(c > 0.0)) throw std::domain_error("exp_decay needs c > 0");
  TimeFunction f;
  f.eval = [c](double u) { return std::complex<double>(std::exp(-c * u), 0.0); };
  f.horizon = T;
  f.osc_scale = c;
  const double e = std::exp(-c * T);
  f.jumps = {{0.0, {1.0, 0.0}, {-c, 0.0}, {c * c, 0.0}},
             {T, {-e, 0.0}, {c * e, 0.0}, {-c * c * e, 0.0}}};
  f.analytic_ft = [c, T](double tau) {
    const std::complex<double> z{c, tau};
    return (1.0 - std::exp(-z * T)) / z;
  };
  return f;
}

TimeFunction TimeFunction::constant(std::complex<double> cval, double T) {
  TimeFunction f;
  f.eval = [cval](double) { return cval; };
  f.horizon = T;
  f.real_valued = (cval.imag() == 0.0);
  f.osc_scale = 1.0 / T;
  f.jumps = {{0.0, cval, {}, {}}, {T, -cval, {}, {}}};
  f.analytic_ft = [cval, T](double tau) { return cval * cexp_integral(tau, T); };
  return f;
}

TimeFunction TimeFunction::cis(double omega, double T) {
  TimeFunction f;
  f.eval = [omega](double u) { return std::exp(-kI * (omega * u)); };
  f.horizon = T;
  f.real_valued = (omega == 0.0);
  f.osc_scale = std::max(std::abs(omega), 1.0 / T);
  const std::complex<double> eT = std::exp(-kI * (omega * T));
  const std::complex<double> d1 = -kI * omega, d2 = -omega * omega;
  f.jumps = {{0.0, {1.0, 0.0}, d1, d2}, {T, -eT, -d1 * eT, -d2 * eT}};
  f.analytic_ft = [omega, T](double tau) { return cexp_integral(tau + omega, T); };
  return f;
}

TimeFunction TimeFunction::zero(double T) {
  TimeFunction f;
  f.eval = [](double) { return std::complex<double>(0.0, 0.0); };
  f.horizon = T;
  f.osc_scale = 1.0 / T;
  f.analytic_ft = [](double) { return std::complex<double>(0.0, 0.0); };
  return f;
}

TimeFunction TimeFunction::custom(std::function<std::complex<double>(double)> fn,
                                  double T, bool real_valued, double osc_scale) {
  if (!(T > 0.0)) throw std::domain_error("custom needs T > 0");
  TimeFunction f;
  f.eval = std::move(fn);
  f.horizon = T;
  f.real_valued = real_valued;
  f.osc_scale = osc_scale;
  // one-sided finite-difference jump data; good enough for tail estimates
  const double h = 1e-4 * T;
  auto d1 = [&](double x, double sgn) {
    return sgn * (-3.0 * f.eval(x) + 4.0 * f.eval(x + sgn * h) -
                  f.eval(x + sgn * 2.0 * h)) / (2.0 * h);
  };
  auto d2 = [&](double x, double sgn) {
    return (2.0 * f.eval(x) - 5.0 * f.eval(x + sgn * h) +
            4.0 * f.eval(x + sgn * 2.0 * h) - f.eval(x + sgn * 3.0 * h)) / (h * h);
  };
  f.jumps = {{0.0, f.eval(0.0), d1(0.0, 1.0), d2(0.0, 1.0)},
             {T, -f.eval(T), -d1(T, -1.0), -d2(T, -1.0)}};
  return f;
}

}  // namespace fracfield
