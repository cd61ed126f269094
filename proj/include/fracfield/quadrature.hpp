#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace fracfield {

/// Numerical knobs shared by the singular-kernel integrals in this library.
/// `jacobi_exponent` records the weight exponent a caller intends to use
/// (2H-2 for time kernels, 1-2H for spectral weights); the integration
/// routines derive their own exponents and this field is informational.
struct QuadratureSpec {
  int node_count = 24;               // Gauss nodes per rule / panel
  double jacobi_exponent = 0.0;
  double removable_eps = 1e-4;       // half-width of the tau = +-1 limit branch
  double rel_tol = 1e-9;
  double tail_cutoff = 240.0;        // truncation radius for improper integrals
  int refinement_factor = 2;

  void validate() const;             // throws std::invalid_argument
};

struct GaussRule {
  std::vector<double> x;             // nodes in (-1, 1), ascending
  std::vector<double> w;             // positive weights
};

/// n-point Gauss-Legendre rule on (-1, 1). Cached; thread-safe.
const GaussRule& gauss_legendre(int n);

/// n-point Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on (-1, 1),
/// a, b > -1. The weight mass is folded into w. Cached; thread-safe.
const GaussRule& gauss_jacobi(int n, double a, double b);

/// integral of f over [lo, hi] by a single mapped n-point Legendre rule.
double integrate_legendre(const std::function<double(double)>& f,
                          double lo, double hi, int n);
std::complex<double> integrate_legendre_c(
    const std::function<std::complex<double>(double)>& f,
    double lo, double hi, int n);

/// integral of (s-lo)^bl (hi-s)^bh f(s) over [lo, hi]; the algebraic endpoint
/// weights are absorbed by the Jacobi rule, f sees only the smooth part.
double integrate_jacobi(const std::function<double(double)>& f,
                        double lo, double hi, double bl, double bh, int n);
std::complex<double> integrate_jacobi_c(
    const std::function<std::complex<double>(double)>& f,
    double lo, double hi, double bl, double bh, int n);

/// Panel breakpoints for [a, b], geometrically graded toward the endpoints
/// that carry algebraic singularities. `levels` halvings per graded side.
std::vector<double> graded_breaks(double a, double b, int levels,
                                  bool toward_a, bool toward_b);

/// integral of (s-a)^bl (b-s)^bh f(s) over [a, b] where f may carry further
/// mild algebraic endpoint behaviour: Jacobi rules on the end panels, plain
/// Legendre on the geometrically graded interior.
double integrate_endpoint_singular(const std::function<double(double)>& f,
                                   double a, double b, double bl, double bh,
                                   int levels, int nodes);
std::complex<double> integrate_endpoint_singular_c(
    const std::function<std::complex<double>(double)>& f,
    double a, double b, double bl, double bh, int levels, int nodes);

/// integral of w^beta f(w) over [lo, hi], beta > -1. A Gauss-Jacobi head
/// panel absorbs the w = 0 singularity when lo = 0 (head width bounded by
/// head_cap when f varies on a small scale there); the remaining panels
/// double geometrically, capped at the oscillation width pi/(2 omega).
double integrate_power_osc(const std::function<double(double)>& f, double lo,
                           double hi, double beta, double omega, int nodes,
                           double head_cap = 0.0);
std::complex<double> integrate_power_osc_c(
    const std::function<std::complex<double>(double)>& f, double lo, double hi,
    double beta, double omega, int nodes, double head_cap = 0.0);

/// integral of e^{i omega s} s^{-q} over [R, infinity), q > 1, via the
/// integration-by-parts asymptotic series (terminated at its smallest term).
/// omega = 0 returns the exact power tail. |err_out| receives the size of the
/// first neglected term when non-null.
std::complex<double> osc_power_tail(double omega, double q, double R,
                                    double* err_out = nullptr);

/// Order-insensitive pairwise summation (reproducible parallel reductions).
double pairwise_sum(std::vector<double>& terms);

/// Minimal deterministic parallel loop: fn(i) for i in [0, n), split over
/// `threads` workers (0 = hardware concurrency). Each index must write only
/// to its own slots.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace fracfield
