#pragma once

#include <complex>
#include <functional>

#include "fracfield/hurst.hpp"
#include "fracfield/quadrature.hpp"
#include "fracfield/time_function.hpp"

namespace fracfield {

/// Right-sided Riemann-Liouville fractional integral
///   I^alpha_{T-} f(s) = 1/Gamma(alpha) integral_s^T (u-s)^{alpha-1} f(u) du,
/// 0 < alpha < 1, evaluated with Gauss-Jacobi nodes for the (u-s)^{alpha-1}
/// weight. Throws a runtime error when refinement diverges (non-integrable f).
std::complex<double> frac_integral_right(const TimeFunction& f, double alpha,
                                         double s, double T,
                                         const QuadratureSpec& spec);

/// K*_H f, evaluable on (0, T):
///   (K*_H f)(s) = c*_H Gamma(H-1/2) s^{1/2-H} I^{H-1/2}_{T-}(u^{H-1/2} f(u))(s).
/// Evaluation at s = 0 is a domain error (the prefactor blows up there);
/// integrate against lambda_H(ds) = s^{1-2H} ds, which absorbs it.
struct TransferredFunction {
  double horizon = 0.0;
  std::function<std::complex<double>(double)> eval;
  std::complex<double> operator()(double s) const { return eval(s); }
};

TransferredFunction transfer_kh(const TimeFunction& f, const HurstModel& model,
                                double T, const QuadratureSpec& spec);

/// The H(0,T) inner product
///   <f, g> = alpha_H integral_0^T integral_0^T f(u) conj(g(v)) |u-v|^{2H-2} du dv
/// by one of three independent routes:
///   direct:   symmetric reduction with a Gauss-Jacobi inner integral,
///   transfer: d_H integral |I^{H-1/2}_{T-}(u^{H-1/2} . )|^2 s^{1-2H} ds,
///   spectral: c_H integral F f conj(F g) |tau|^{-(2H-1)} d tau with analytic
///             oscillatory tail beyond the truncation radius.
enum class IpBackend { direct, transfer, spectral };

std::complex<double> inner_product_time(const TimeFunction& f,
                                        const TimeFunction& g,
                                        const HurstModel& model, double T,
                                        IpBackend backend,
                                        const QuadratureSpec& spec);

/// Runs the built-in cross-backend family (indicator, identity, sin, cos,
/// exp) and throws std::runtime_error on pairwise disagreement beyond
/// rel_tol. Returns the worst relative deviation observed.
double backend_self_test(const HurstModel& model, double T,
                         const QuadratureSpec& spec, double rel_tol);

/// Analytic tail integral_R^infty F f(s tau) conj(F g(s tau)) tau^beta d tau,
/// s = sign, assembled from the jump data of f and g (exact for pure-jump
/// functions, O(R^{-(beta+7)}) otherwise).
std::complex<double> ft_pair_tail(const TimeFunction& f, const TimeFunction& g,
                                  double beta, double R, int sign);

}  // namespace fracfield
