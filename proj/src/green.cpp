#include "fracfield/green.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracfield {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSmallWaveArg = 1e-4;
}  // namespace

double fourier_green(Operator op, double t, double r) {
  if (t < 0.0 || r < 0.0)
    throw std::domain_error("fourier_green requires t >= 0 and r >= 0");
  if (op == Operator::heat) return std::exp(-0.5 * t * r * r);
  const double z = t * r;
  if (z < kSmallWaveArg) {
    // sin(tr)/r = t (1 - z^2/6 + z^4/120 - ...)
    return t * (1.0 - z * z / 6.0 + z * z * z * z / 120.0);
  }
  return std::sin(z) / r;
}

PhysicalGreen green_physical(Operator op, int d, double t,
                             const std::vector<double>& x) {
  if (!(t > 0.0)) throw std::domain_error("green_physical requires t > 0");
  if (d < 1 || static_cast<std::size_t>(d) != x.size())
    throw std::invalid_argument("dimension does not match point");
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  const double r = std::sqrt(r2);

  if (op == Operator::heat) {
    return std::pow(2.0 * kPi * t, -0.5 * d) * std::exp(-r2 / (2.0 * t));
  }

  switch (d) {
    case 1:
      return r < t ? 0.5 : 0.0;
    case 2:
      return r < t ? 1.0 / (2.0 * kPi * std::sqrt(t * t - r2)) : 0.0;
    case 3: {
      const double c_d = 1.0 / (4.0 * kPi);
      // mass = c_d t^{-1} * |sigma_t| = c_d t^{-1} 4 pi t^2 = t
      return SphereSurfaceMeasure{t, c_d, t};
    }
    default:
      throw std::invalid_argument(
          "wave fundamental solution in physical space is a distribution for "
          "d >= 4; use fourier_green");
  }
}

OscillatoryPair ft_gt(double lambda, double tau, double t) {
  if (!(lambda > 0.0) || !(t > 0.0))
    throw std::domain_error("ft_gt requires lambda > 0 and t > 0");
  if (tau == 1.0) return {0.0, 0.0};
  const double lt = lambda * t;
  return {std::sin(tau * lt) - tau * std::sin(lt),
          std::cos(tau * lt) - std::cos(lt)};
}

namespace {

// F_{0,T} sin(tau) = I1 - i J1 with the Appendix-style closed forms
//   I1 = (1 - cos(tau T) cos T - tau sin(tau T) sin T) / (1 - tau^2)
//   J1 = (tau cos(tau T) sin T - sin(tau T) cos T) / (1 - tau^2)
// and the first-order expansion around the removable point tau = 1.
std::complex<double> fourier_sin_from_zero(double T, double tau, double eps) {
  const double at = std::abs(tau);
  double i1, j1;
  if (std::abs(at - 1.0) < eps) {
    // second-order expansion of the Appendix forms around tau = 1
    const double d = at - 1.0;
    const double s = std::sin(T);
    const double sin2 = s * s;
    const double s2T = std::sin(2.0 * T);
    i1 = (sin2 - 0.5 * (T * T - T * s2T) * d - 0.5 * T * T * sin2 * d * d) /
         (2.0 + d);
    j1 = (T - 0.5 * s2T + T * sin2 * d -
          (T * T * T - 1.5 * T * T * s2T) / 6.0 * d * d) /
         (2.0 + d);
  } else {
    const double ct = std::cos(at * T), st = std::sin(at * T);
    const double c = std::cos(T), s = std::sin(T);
    const double den = 1.0 - at * at;
    i1 = (1.0 - ct * c - at * st * s) / den;
    j1 = (at * ct * s - st * c) / den;
  }
  if (tau < 0.0) j1 = -j1;  // I1 even, J1 odd in tau
  return {i1, -j1};
}

}  // namespace

std::complex<double> restricted_fourier_sin(double a, double b, double tau,
                                            double eps) {
  if (!(b > a) || a < 0.0)
    throw std::domain_error("restricted_fourier_sin requires 0 <= a < b");
  std::complex<double> v = fourier_sin_from_zero(b, tau, eps);
  if (a > 0.0) v -= fourier_sin_from_zero(a, tau, eps);
  return v;
}

}  // namespace fracfield
