#include "fracfield/time_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fracfield {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

using CFun = std::function<std::complex<double>(double)>;

// integer powers of i, n may be negative
std::complex<double> ipow(int n) {
  static const std::complex<double> tab[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  return tab[((n % 4) + 4) % 4];
}

std::vector<std::pair<double, double>> smooth_pieces(const TimeFunction& f) {
  std::vector<double> cuts;
  cuts.push_back(0.0);
  for (double b : f.breaks)
    if (b > 0.0 && b < f.horizon) cuts.push_back(b);
  cuts.push_back(f.horizon);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, double>> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) pieces.emplace_back(cuts[i], cuts[i + 1]);
  return pieces;
}

// ---------------------------------------------------------------------------
// direct backend

// I_phi(u) = integral_0^u phi(v) (u-v)^{2H-2} dv, via w = u - v.
std::complex<double> kernel_convolution(const TimeFunction& phi, double u,
                                        double beta, int nodes) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [p, q] : smooth_pieces(phi)) {
    if (p >= u) break;
    const double q_eff = std::min(q, u);
    acc += integrate_power_osc_c([&phi, u](double w) { return phi.eval(u - w); },
                              u - q_eff, u - p, beta, phi.osc_scale, nodes);
  }
  return acc;
}

// graded + oscillation-resolved panels of a plain integrand on [lo, hi]
std::complex<double> outer_integrate(const CFun& f, double lo, double hi,
                                     double omega, int nodes, int levels) {
  if (hi <= lo) return {0.0, 0.0};
  const double width =
      (omega > 0.0) ? std::min(kPi / (2.0 * omega), hi - lo) : (hi - lo);
  const auto pts = graded_breaks(lo, hi, levels, true, true);
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double a = pts[i];
    const double b = pts[i + 1];
    while (a < b) {
      const double next = std::min(b, a + width);
      acc += integrate_legendre_c(f, a, next, nodes);
      a = next;
    }
  }
  return acc;
}

std::vector<double> merged_cuts(const TimeFunction& f, const TimeFunction& g,
                                double T) {
  std::vector<double> cuts{0.0, T};
  for (double b : f.breaks)
    if (b > 0.0 && b < T) cuts.push_back(b);
  for (double b : g.breaks)
    if (b > 0.0 && b < T) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

std::complex<double> direct_ip(const TimeFunction& f, const TimeFunction& g,
                               const HurstModel& m, double T,
                               const QuadratureSpec& spec) {
  const double beta = 2.0 * m.h - 2.0;
  const int nodes = spec.node_count;
  const double omega = std::max(f.osc_scale, g.osc_scale);
  auto integrand = [&](double u) {
    return f.eval(u) * std::conj(kernel_convolution(g, u, beta, nodes)) +
           std::conj(g.eval(u)) * kernel_convolution(f, u, beta, nodes);
  };
  const auto cuts = merged_cuts(f, g, T);
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    acc += outer_integrate(integrand, cuts[i], cuts[i + 1], omega, nodes, 34);
  return m.alpha_h * acc;
}

// ---------------------------------------------------------------------------
// transfer backend

// (1/Gamma(alpha)) sum over pieces of integral (u-s)^{alpha-1} u^{mu} phi(u) du
std::complex<double> rl_weighted(const TimeFunction& phi, double alpha, double s,
                                 double mu, int nodes) {
  const double T = phi.horizon;
  if (s >= T) return {0.0, 0.0};
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [p, q] : smooth_pieces(phi)) {
    if (q <= s) continue;
    const double a = std::max(p, s);
    auto fn = [&phi, s, mu](double w) {
      const double u = s + w;
      return std::pow(u, mu) * phi.eval(u);
    };
    // head cap s: u^{mu} varies on scale s near w = 0
    acc += integrate_power_osc_c(fn, a - s, q - s, alpha - 1.0, phi.osc_scale,
                              nodes, s > 0.0 ? s : 0.0);
  }
  return acc / std::tgamma(alpha);
}

std::complex<double> transfer_ip(const TimeFunction& f, const TimeFunction& g,
                                 const HurstModel& m, double T,
                                 const QuadratureSpec& spec) {
  const double alpha = m.h - 0.5;
  const double mu = m.h - 0.5;
  const int nodes = spec.node_count;
  const double omega = std::max(f.osc_scale, g.osc_scale);
  const double wbeta = 1.0 - 2.0 * m.h;  // lambda_H weight exponent

  auto phi = [&](double s) {
    return rl_weighted(f, alpha, s, mu, nodes) *
           std::conj(rl_weighted(g, alpha, s, mu, nodes));
  };

  const auto cuts = merged_cuts(f, g, T);
  const double width =
      (omega > 0.0) ? std::min(kPi / (2.0 * omega), T) : T;
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const auto pts = graded_breaks(cuts[c], cuts[c + 1], 30, true, true);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      double a = pts[i];
      const double b = pts[i + 1];
      if (a == 0.0) {
        // Jacobi panel carries the s^{1-2H} weight exactly
        acc += integrate_jacobi_c(phi, a, std::min(b, width), wbeta, 0.0, nodes);
        a = std::min(b, width);
      }
      while (a < b) {
        const double next = std::min(b, a + width);
        acc += integrate_legendre_c(
            [&](double s) { return std::pow(s, wbeta) * phi(s); }, a, next,
            nodes);
        a = next;
      }
    }
  }
  return m.d_h * acc;
}

// ---------------------------------------------------------------------------
// spectral backend

double max_jump_position(const TimeFunction& f) {
  double x = 0.0;
  for (const auto& j : f.jumps) x = std::max(x, j.x);
  return x > 0.0 ? x : f.horizon;
}

double min_jump_gap(const TimeFunction& f, const TimeFunction& g) {
  std::vector<double> xs;
  for (const auto& j : f.jumps) xs.push_back(j.x);
  for (const auto& j : g.jumps) xs.push_back(j.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  double gap = std::max(f.horizon, g.horizon);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    gap = std::min(gap, xs[i + 1] - xs[i]);
  return gap;
}

std::complex<double> jump_coeff(const JumpData& j, int order) {
  switch (order) {
    case 0: return j.d0;
    case 1: return j.d1;
    default: return j.d2;
  }
}

}  // namespace

// tail of integral_R^inf F f conj(F g) tau^beta d tau from the jump
// expansion F f(tau) ~ sum_j e^{-i tau x_j} sum_a d_a/(i tau)^{a+1}
std::complex<double> ft_pair_tail(const TimeFunction& f, const TimeFunction& g,
                                  double beta, double R, int sign) {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& jf : f.jumps) {
    for (int a = 0; a <= 2; ++a) {
      const std::complex<double> da = jump_coeff(jf, a);
      if (da == 0.0) continue;
      for (const auto& jg : g.jumps) {
        for (int b = 0; b <= 2; ++b) {
          const std::complex<double> db = jump_coeff(jg, b);
          if (db == 0.0) continue;
          // 1 / [(i sgn tau)^{a+1} (-i sgn tau)^{b+1}]
          const std::complex<double> c =
              ipow(-sign * (a + 1)) * ipow(sign * (b + 1));
          const double q = a + b + 2.0 - beta;
          acc += da * std::conj(db) * c *
                 osc_power_tail(sign * (jg.x - jf.x), q, R);
        }
      }
    }
  }
  return acc;
}

namespace {

std::complex<double> spectral_side(const TimeFunction& f, const TimeFunction& g,
                                   const HurstModel& m, const QuadratureSpec& spec,
                                   double R, double width, int sign) {
  const double beta = 1.0 - 2.0 * m.h;
  const int nodes = spec.node_count;
  auto G = [&](double tau) {
    const double t = sign * tau;
    return f.restricted_ft(t, spec) * std::conj(g.restricted_ft(t, spec));
  };
  std::complex<double> acc =
      integrate_jacobi_c(G, 0.0, std::min(0.5, width), beta, 0.0, nodes);
  double cur = std::min(0.5, width);
  while (cur < R) {
    const double step = std::min(width, cur);
    const double next = std::min(R, cur + step);
    acc += integrate_legendre_c(
        [&](double tau) { return std::pow(tau, beta) * G(tau); }, cur, next,
        nodes);
    cur = next;
  }
  return acc + ft_pair_tail(f, g, 1.0 - 2.0 * m.h, R, sign);
}

std::complex<double> spectral_ip(const TimeFunction& f, const TimeFunction& g,
                                 const HurstModel& m, const QuadratureSpec& spec) {
  const double xmax = std::max(max_jump_position(f), max_jump_position(g));
  const double width = kPi / (2.0 * xmax);
  const double gap = std::max(min_jump_gap(f, g), 1e-6);
  const double R = std::max({spec.tail_cutoff, 40.0 / gap,
                             4.0 * std::max(f.osc_scale, g.osc_scale)});
  if (f.real_valued && g.real_valued) {
    const std::complex<double> pos = spectral_side(f, g, m, spec, R, width, +1);
    return {2.0 * m.c_h * pos.real(), 0.0};
  }
  const std::complex<double> pos = spectral_side(f, g, m, spec, R, width, +1);
  const std::complex<double> neg = spectral_side(f, g, m, spec, R, width, -1);
  return m.c_h * (pos + neg);
}

}  // namespace

std::complex<double> frac_integral_right(const TimeFunction& f, double alpha,
                                         double s, double T,
                                         const QuadratureSpec& spec) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("fractional order must lie in (0, 1)");
  if (s < 0.0 || s > T) throw std::domain_error("need 0 <= s <= T");
  if (s >= T) return {0.0, 0.0};
  if (f.horizon < T)
    throw std::invalid_argument("function horizon shorter than T");

  auto run = [&](int nodes) {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [p, q] : smooth_pieces(f)) {
      if (q <= s || p >= T) continue;
      const double a = std::max(p, s), b = std::min(q, T);
      if (b <= a) continue;
      acc += integrate_power_osc_c(
          [&f, s](double w) { return f.eval(s + w); }, a - s, b - s,
          alpha - 1.0, f.osc_scale, nodes);
    }
    return acc / std::tgamma(alpha);
  };
  const std::complex<double> v1 = run(spec.node_count);
  const std::complex<double> v2 = run(spec.node_count + 8);
  const double scale = std::max(std::abs(v1), std::abs(v2));
  if (scale > 0.0 && std::abs(v1 - v2) > 0.05 * scale + 1e-30)
    throw std::runtime_error(
        "fractional integral diverges under refinement (non-integrable input)");
  return v2;
}

TransferredFunction transfer_kh(const TimeFunction& f, const HurstModel& model,
                                double T, const QuadratureSpec& spec) {
  if (f.horizon < T)
    throw std::invalid_argument("function horizon shorter than T");
  const double alpha = model.h - 0.5;
  const double pre = model.c_star_h * std::tgamma(alpha);
  const int nodes = spec.node_count;
  TransferredFunction out;
  out.horizon = T;
  out.eval = [f, model, alpha, pre, nodes](double s) {
    if (!(s > 0.0))
      throw std::domain_error(
          "K*_H is singular at s = 0; integrate against lambda_H(ds)");
    if (s >= f.horizon) return std::complex<double>{0.0, 0.0};
    // rl_weighted is I^{alpha}_{T-} itself (1/Gamma folded in)
    return pre * std::pow(s, 0.5 - model.h) *
           rl_weighted(f, alpha, s, model.h - 0.5, nodes);
  };
  return out;
}

std::complex<double> inner_product_time(const TimeFunction& f,
                                        const TimeFunction& g,
                                        const HurstModel& model, double T,
                                        IpBackend backend,
                                        const QuadratureSpec& spec) {
  if (!(T > 0.0)) throw std::domain_error("horizon must be positive");
  if (f.horizon != T || g.horizon != T)
    throw std::invalid_argument("function horizons must equal T");
  switch (backend) {
    case IpBackend::direct: return direct_ip(f, g, model, T, spec);
    case IpBackend::transfer: return transfer_ip(f, g, model, T, spec);
    case IpBackend::spectral: return spectral_ip(f, g, model, spec);
  }
  throw std::logic_error("unknown backend");
}

double backend_self_test(const HurstModel& model, double T,
                         const QuadratureSpec& spec, double rel_tol) {
  const TimeFunction family[] = {
      TimeFunction::indicator(T, T),    TimeFunction::identity(T),
      TimeFunction::sine(T),            TimeFunction::cosine(T),
      TimeFunction::exp_decay(1.0, T)};
  double worst = 0.0;
  for (const auto& f : family) {
    const std::complex<double> v[3] = {
        inner_product_time(f, f, model, T, IpBackend::direct, spec),
        inner_product_time(f, f, model, T, IpBackend::transfer, spec),
        inner_product_time(f, f, model, T, IpBackend::spectral, spec)};
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const double scale = std::max(std::abs(v[i]), std::abs(v[j]));
        if (scale == 0.0) continue;
        worst = std::max(worst, std::abs(v[i] - v[j]) / scale);
      }
  }
  if (worst > rel_tol)
    throw std::runtime_error("inner-product backends disagree beyond tolerance");
  return worst;
}

}  // namespace fracfield
