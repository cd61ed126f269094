#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fracfield/hurst.hpp"
#include "fracfield/quadrature.hpp"

namespace fracfield {

/// mu(dxi) = |xi|^{-alpha} dxi, 0 < alpha < d (Riesz kernel in space).
struct RieszMeasure {
  double alpha = 0.0;
  int d = 1;
};

/// mu(dxi) = (1 + |xi|^2)^{-alpha/2} dxi, alpha > 0 (Bessel kernel).
struct BesselMeasure {
  double alpha = 0.0;
  int d = 1;
};

/// mu(dxi) = prod_i c_{H_i} |xi_i|^{-(2H_i-1)} dxi (fractional Brownian field).
struct FbmFieldMeasure {
  std::vector<double> h;
};

/// mu proportional to Lebesgue measure (f = delta_0); the constant is 1.
struct WhiteSpaceMeasure {
  int d = 1;
};

/// Isotropic measure with a tabulated radial density, interpolated log-log
/// and extended by the fitted power laws of the first/last table segments.
struct CustomRadialMeasure {
  int d = 1;
  std::vector<double> r;
  std::vector<double> m;
};

class SpectralMeasure {
 public:
  using Variant = std::variant<RieszMeasure, BesselMeasure, FbmFieldMeasure,
                               WhiteSpaceMeasure, CustomRadialMeasure>;

  static SpectralMeasure riesz(double alpha, int d);
  static SpectralMeasure bessel(double alpha, int d);
  static SpectralMeasure fbm_field(std::vector<double> h);
  static SpectralMeasure white(int d);
  static SpectralMeasure custom_radial(int d, std::vector<double> r,
                                       std::vector<double> m);

  const Variant& variant() const { return v_; }
  int dim() const;
  bool isotropic() const;
  std::string name() const;

  /// radial density m(rho); throws for the anisotropic FbmField variant
  double radial_density(double rho) const;
  /// density ~ rho^{-p} near the origin (0 when bounded)
  double origin_exponent() const;
  /// density ~ rho^{-p} at infinity
  double tail_exponent() const;

 private:
  explicit SpectralMeasure(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

struct Verdict {
  bool holds = false;
  enum class Method { closed_form, numerical } method = Method::closed_form;
  bool conclusive = true;
  std::optional<double> threshold;  // closed-form boundary
  std::optional<double> margin;     // distance from the boundary
  std::vector<double> trace;        // partial integrals over nested cutoffs
  int smallest_l = 0;               // temperedness witness
  std::string note;
};

/// Temperedness: mu finite near the origin and integrable against
/// |xi|^{-2l} outside the unit ball for some integer l >= 1 (the smallest
/// admissible l is reported).
Verdict is_tempered(const SpectralMeasure& mu);

/// integral (1 + |xi|^2)^{-kappa} mu(dxi) < infinity, decided in closed form
/// for the named variants and numerically for CustomRadial. Boundary cases
/// classify as "does not hold" (the integral diverges logarithmically).
Verdict existence_condition(const SpectralMeasure& mu, double kappa);

Verdict dalang_condition(const SpectralMeasure& mu);                         // kappa = 1
Verdict wave_existence(const SpectralMeasure& mu, const HurstModel& model);  // kappa = H + 1/2
Verdict heat_existence(const SpectralMeasure& mu, const HurstModel& model);  // kappa = 2H

/// Nested-cutoff divergence detector for the same condition: partial
/// integrals over decade cutoffs, classified by the fitted growth slope.
/// Works for every isotropic variant and, in d <= 3, for FbmField via
/// tensor-product quadrature.
Verdict numerical_condition(const SpectralMeasure& mu, double kappa,
                            const QuadratureSpec& spec = {});

/// A radial integrand with its declared large-r decay rate g(r) ~ C r^{-p}
/// and an oscillation scale for quadrature panel sizing.
struct RadialFunction {
  std::function<double(double)> eval;
  double decay_power = 0.0;
  double osc_scale = 0.0;
};

struct RadialIntegral {
  double value = 0.0;          // truncated integral plus the tail estimate
  double tail_estimate = 0.0;  // power-law tail added beyond the cutoff
  double tail_error = 0.0;     // consistency error of the tail estimate
};

/// omega_{d-1} integral_0^infty g(r) m(r) r^{d-1} dr for isotropic mu.
/// Throws for FbmField input and on detected divergence.
RadialIntegral radial_integrate(const SpectralMeasure& mu,
                                const RadialFunction& g,
                                const QuadratureSpec& spec);

/// Surface area of the unit (d-1)-sphere, 2 pi^{d/2} / Gamma(d/2).
double sphere_surface(int d);

}  // namespace fracfield
