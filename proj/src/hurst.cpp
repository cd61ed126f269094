#include "fracfield/hurst.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracfield {

HurstModel hurst_constants(double h) {
  if (!(h > 0.5 && h < 1.0))
    throw std::domain_error("Hurst index must lie in the open interval (1/2, 1)");
  HurstModel m;
  m.h = h;
  m.alpha_h = h * (2.0 * h - 1.0);
  m.c_h = std::tgamma(2.0 * h + 1.0) * std::sin(std::numbers::pi * h) /
          (2.0 * std::numbers::pi);
  const double log_beta = std::lgamma(h - 0.5) + std::lgamma(2.0 - 2.0 * h) -
                          std::lgamma(1.5 - h);
  m.c_star_h = std::sqrt(m.alpha_h / std::exp(log_beta));
  const double g = std::tgamma(h - 0.5);
  m.d_h = m.c_star_h * m.c_star_h * g * g;
  return m;
}

double covariance_rh(double t, double s, const HurstModel& model) {
  if (t < 0.0 || s < 0.0)
    throw std::domain_error("covariance_rh requires t, s >= 0");
  const double p = 2.0 * model.h;
  return 0.5 * (std::pow(t, p) + std::pow(s, p) - std::pow(std::abs(t - s), p));
}

}  // namespace fracfield
