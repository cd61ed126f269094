#pragma once

#include <vector>

#include "fracfield/green.hpp"
#include "fracfield/hurst.hpp"
#include "fracfield/quadrature.hpp"
#include "fracfield/spectral_measure.hpp"

namespace fracfield {

/// Plancherel closed form of the sandwich integral
///   integral_R (tau^2-1)^{-2} [f_t^2(lambda,tau) + g_t^2(lambda,tau)] d tau
///     = pi lambda t - (pi/2) sin(2 lambda t).
double sandwich_exact(double lambda, double t);

/// The same integral by direct tau-quadrature (cross-check mode): panels over
/// the removable singularities plus the analytic oscillatory tail.
double sandwich_numeric(double lambda, double t, const QuadratureSpec& spec);

/// Fitted band constants c_lo, c_hi with
///   c_lo <= sandwich(lambda, t) (1+lambda^2)/lambda^3 <= c_hi on [1, 1e3],
/// stable under grid refinement. These replace the paper's unnamed c_1, c_2.
struct SandwichBand {
  double lo = 0.0;
  double hi = 0.0;
  bool stable = false;
};
SandwichBand sandwich_band(double t);

/// N_t(xi): the H(0,t)-norm of u -> sin(u|xi|)/|xi|, three routes. The
/// r = 0 limit is t^{2H+2}/(2H+2).
enum class WaveBackend { time_domain, spectral, transfer };
double n_wave(double t, double r, const HurstModel& model, WaveBackend backend,
              const QuadratureSpec& spec);

/// A_t(xi) = alpha_H int int exp(-(u+v) r^2/2) |u-v|^{2H-2} du dv via the
/// exact one-dimensional reduction in w = u - v. A_t(0) = t^{2H}.
double a_heat(double t, double r, const HurstModel& model,
              const QuadratureSpec& spec);

/// Two-time kernel
///   alpha_H int_0^{t1} int_0^{t2} FG(t1-u) FG(t2-v) |u-v|^{2H-2} du dv;
/// diagonal t1 = t2 equals n_wave / a_heat.
double cross_time(Operator op, double t1, double t2, double r,
                  const HurstModel& model, const QuadratureSpec& spec);

/// E|u(t,x)|^2 = integral N_t(|xi|) mu(dxi) (wave) resp. A_t (heat), with the
/// |xi| <= 1 and |xi| >= 1 contributions reported separately.
struct VarianceResult {
  double total = 0.0;
  double inner = 0.0;  // |xi| <= 1
  double outer = 0.0;  // |xi| >= 1, tail estimate included
  double tail_estimate = 0.0;
  double tail_error = 0.0;
};
VarianceResult variance(Operator op, double t, const SpectralMeasure& mu,
                        const HurstModel& model, const QuadratureSpec& spec);

struct BoundPoint {
  double r = 0.0;
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

/// Wave upper bounds: N_t <= C_H t^{2H+2} (1+r^2)^{-(H+1/2)} on r <= 1 and
/// N_t <= c3 (1+r^2)^{-(H+1/2)} on r >= 1, with C_H = b_H^2 2^{H+1/2}/3 and
/// c3 = c_H (C/(1-H) + c2) 2^{3H-1/2} built from the fitted band constant.
struct WaveBoundReport {
  std::vector<BoundPoint> inner_points;  // r <= 1
  std::vector<BoundPoint> outer_points;  // r >= 1
  bool holds = false;
  double constant_inner = 0.0;
  double constant_outer = 0.0;
  double sup_witness = 0.0;  // sup N (1+r^2)^{H+1/2}, free of b_H
};
WaveBoundReport bounds_wave(double t, const HurstModel& model, double b_h,
                            const std::vector<double>& radii,
                            const QuadratureSpec& spec);

/// Heat sandwich: (1/4)(t^{2H} ^ 1)(1+r^2)^{-2H} <= A_t <= C_H (t^{2H}+1)
/// (1+r^2)^{-2H}, C_H = b_H^2 (4H)^{2H}. The lower constant 1/4 is proven;
/// a violation indicates a quadrature bug.
struct HeatBoundPoint {
  double r = 0.0;
  double t = 0.0;
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
  bool ok_lower = false;
  bool ok_upper = false;
};
struct HeatBoundReport {
  std::vector<HeatBoundPoint> points;
  bool lower_holds = false;
  bool upper_holds = false;
  double constant_upper = 0.0;
};
HeatBoundReport bounds_heat(double t, const HurstModel& model, double b_h,
                            const std::vector<double>& radii,
                            const QuadratureSpec& spec);

/// The necessity recursion: I(k) = int_{|xi|>=1} |xi|^{-(2H+2+k)} mu(dxi),
/// split integrals A'_t(k) (|tau| <= 2) and A''_t(k) (|tau| >= 2) of the
/// sandwich numerator, the explicit tail constant, and the chain
///   (1/2) c1 I(k-1) <= 2^{2H-1} I_t^{(2)} / c_H + C_tail I(k), k = 0..m.
struct NecessityChainReport {
  int l = 0;
  int m = 0;
  double c1_fit = 0.0;
  double c2_fit = 0.0;
  double c_tail = 0.0;
  double i_t2 = 0.0;
  std::vector<double> I;            // I(k) for k = -1..m
  std::vector<double> A, A1, A2;    // A_t(k), A'_t(k), A''_t(k) for k = 0..m
  bool inner_ok = false;
  bool outer_ok = false;
  bool lower_ok = false;
  bool chain_closes = false;
  double recursion_bound = 0.0;     // right side of the unrolled recursion
  double part_a_lhs = 0.0;          // near-origin lower bound at t = 1
  double part_a_rhs = 0.0;
  bool part_a_ok = false;
  bool vacuous = false;             // I_t^{(2)} divergent: nothing to prove
};
NecessityChainReport necessity_chain(double t, const SpectralMeasure& mu,
                                     const HurstModel& model, int l,
                                     const QuadratureSpec& spec);

/// Exact L^2 time increment E|u(t+h,x) - u(t,x)|^2 (not the dominating
/// bound); independent of x.
double continuity_modulus(Operator op, double t, double h,
                          const SpectralMeasure& mu, const HurstModel& model,
                          const QuadratureSpec& spec);

/// Spatial increment E|u(t,x) - u(t,y)|^2 at |x - y| = dist via the factor
/// 2(1 - spherical mean of the plane wave).
double spatial_increment(Operator op, double t, double dist,
                         const SpectralMeasure& mu, const HurstModel& model,
                         const QuadratureSpec& spec);

/// k_t(h, r) = ||sin((.+h) r) - sin(. r)||^2_{H(0,t)} and its h-free
/// dominating bound (the limit-interchange diagnostic).
double k_wave_increment(double t, double h, double r, const HurstModel& model,
                        const QuadratureSpec& spec);
double kbar_wave(double t, double r, const HurstModel& model, double b_h,
                 const QuadratureSpec& spec);

/// Spherical average of the plane wave over directions: cos, J_0 (periodic
/// trapezoid), sinc for d = 1, 2, 3.
double sphere_mean(int d, double z);

}  // namespace fracfield
