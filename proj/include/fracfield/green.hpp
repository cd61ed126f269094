#pragma once

#include <complex>
#include <variant>
#include <vector>

namespace fracfield {

enum class Operator { wave, heat };

/// Fourier transform of the fundamental solution at radius r = |xi|:
/// wave: sin(t r)/r (value t at r = 0), heat: exp(-t r^2 / 2).
double fourier_green(Operator op, double t, double r);

/// The d = 3 wave fundamental solution is the rescaled surface measure
/// c_d t^{-1} sigma_t; it has no pointwise density. Only Fourier-side
/// computations consume this descriptor. c_d is the conventional 1/(4 pi),
/// making the total mass t (consistent with sin(t r)/r -> t at r = 0).
struct SphereSurfaceMeasure {
  double radius = 0.0;
  double c_d = 0.0;
  double total_mass = 0.0;
};

using PhysicalGreen = std::variant<double, SphereSurfaceMeasure>;

/// Physical-space fundamental solution at the point x. Wave supports
/// d in {1, 2, 3} (d = 3 returns the measure descriptor); heat any d >= 1.
PhysicalGreen green_physical(Operator op, int d, double t,
                             const std::vector<double>& x);

/// The oscillatory pair f_t(lambda, tau) = sin(tau lambda t) - tau sin(lambda t),
/// g_t(lambda, tau) = cos(tau lambda t) - cos(lambda t). Both vanish at tau = 1.
struct OscillatoryPair {
  double f_val = 0.0;
  double g_val = 0.0;
};

OscillatoryPair ft_gt(double lambda, double tau, double t);

/// Restricted Fourier transform of sin on [a, b]:
/// F_{a,b} sin(tau) = integral_a^b e^{-i tau x} sin(x) dx.
/// For |tau -+ 1| < eps the removable singularity is evaluated by its
/// first-order expansion around the limit value.
std::complex<double> restricted_fourier_sin(double a, double b, double tau,
                                            double eps = 1e-4);

}  // namespace fracfield
