#include "fracfield/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace fracfield {

void QuadratureSpec::validate() const {
  if (node_count < 2) throw std::invalid_argument("node_count must be >= 2");
  if (!(removable_eps > 0.0 && removable_eps < 0.5))
    throw std::invalid_argument("removable_eps must lie in (0, 1/2)");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  if (!(tail_cutoff > 0.0) || !std::isfinite(tail_cutoff))
    throw std::invalid_argument("tail_cutoff must be finite and positive");
  if (refinement_factor < 2)
    throw std::invalid_argument("refinement_factor must be >= 2");
}

namespace {

// Golub-Welsch: nodes/weights from the symmetric tridiagonal recurrence
// matrix of the monic Jacobi polynomials for (1-x)^a (1+x)^b.
GaussRule build_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("Gauss rule needs n >= 1");
  if (a <= -1.0 || b <= -1.0)
    throw std::invalid_argument("Jacobi exponents must exceed -1");

  const double ab = a + b;
  const double mu0 =
      std::pow(2.0, ab + 1.0) *
      std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));

  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double alpha;
    if (k == 0) {
      alpha = (b - a) / (ab + 2.0);
    } else {
      const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
      alpha = (b * b - a * a) / den;
    }
    J(k, k) = alpha;
    if (k >= 1) {
      double beta;
      if (k == 1) {
        beta = 4.0 * (a + 1.0) * (b + 1.0) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
      } else {
        const double kk = static_cast<double>(k);
        const double den = (2.0 * kk + ab) * (2.0 * kk + ab) *
                           (2.0 * kk + ab + 1.0) * (2.0 * kk + ab - 1.0);
        beta = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) / den;
      }
      J(k, k - 1) = J(k - 1, k) = std::sqrt(beta);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("Gauss rule eigen decomposition failed");

  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.x[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.w[i] = mu0 * v0 * v0;
  }
  return rule;
}

std::mutex g_rule_mutex;
std::map<std::tuple<int, double, double>, std::unique_ptr<GaussRule>> g_rules;

}  // namespace

const GaussRule& gauss_jacobi(int n, double a, double b) {
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto key = std::make_tuple(n, a, b);
  auto it = g_rules.find(key);
  if (it == g_rules.end()) {
    it = g_rules.emplace(key, std::make_unique<GaussRule>(build_jacobi(n, a, b))).first;
  }
  return *it->second;
}

const GaussRule& gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

double integrate_legendre(const std::function<double(double)>& f,
                          double lo, double hi, int n) {
  if (hi <= lo) return 0.0;
  const GaussRule& r = gauss_legendre(n);
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(c + h * r.x[i]);
  return acc * h;
}

std::complex<double> integrate_legendre_c(
    const std::function<std::complex<double>(double)>& f,
    double lo, double hi, int n) {
  if (hi <= lo) return {0.0, 0.0};
  const GaussRule& r = gauss_legendre(n);
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(c + h * r.x[i]);
  return acc * h;
}

// Mapped Jacobi rule: s = c + h x, (s-lo) = h(1+x), (hi-s) = h(1-x), so the
// weight contributes h^{bl+bh} relative to the reference interval.
double integrate_jacobi(const std::function<double(double)>& f,
                        double lo, double hi, double bl, double bh, int n) {
  if (hi <= lo) return 0.0;
  const GaussRule& r = gauss_jacobi(n, bh, bl);
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(c + h * r.x[i]);
  return acc * h * std::pow(h, bl + bh);
}

std::complex<double> integrate_jacobi_c(
    const std::function<std::complex<double>(double)>& f,
    double lo, double hi, double bl, double bh, int n) {
  if (hi <= lo) return {0.0, 0.0};
  const GaussRule& r = gauss_jacobi(n, bh, bl);
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(c + h * r.x[i]);
  return acc * h * std::pow(h, bl + bh);
}

std::vector<double> graded_breaks(double a, double b, int levels,
                                  bool toward_a, bool toward_b) {
  std::vector<double> pts;
  pts.push_back(a);
  const double len = b - a;
  if (len <= 0.0) return pts;
  if (toward_a && toward_b) {
    const double mid = a + 0.5 * len;
    for (int k = levels; k >= 1; --k) pts.push_back(a + len * std::ldexp(0.5, -k));
    pts.push_back(mid);
    for (int k = 1; k <= levels; ++k) pts.push_back(b - len * std::ldexp(0.5, -k));
  } else if (toward_a) {
    for (int k = levels; k >= 1; --k) pts.push_back(a + len * std::ldexp(1.0, -k));
  } else if (toward_b) {
    for (int k = 1; k <= levels; ++k) pts.push_back(b - len * std::ldexp(1.0, -k));
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

namespace {

template <typename T, typename F>
T endpoint_singular_impl(const F& f, double a, double b, double bl, double bh,
                         int levels, int nodes) {
  if (b <= a) return T{};
  const auto pts = graded_breaks(a, b, levels, true, true);
  T acc{};
  for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
    const double lo = pts[p], hi = pts[p + 1];
    const bool first = (p == 0), last = (p + 2 == pts.size());
    const double wl = first ? bl : 0.0;
    const double wh = last ? bh : 0.0;
    const GaussRule& r = (wl != 0.0 || wh != 0.0)
                             ? gauss_jacobi(nodes, wh, wl)
                             : gauss_legendre(nodes);
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    T panel{};
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      const double s = c + h * r.x[i];
      T v = f(s);
      // weights not folded into this panel's rule are part of the integrand
      if (!first && bl != 0.0) v *= std::pow(s - a, bl);
      if (!last && bh != 0.0) v *= std::pow(b - s, bh);
      panel += r.w[i] * v;
    }
    panel *= h * std::pow(h, wl + wh);
    acc += panel;
  }
  return acc;
}

}  // namespace

double integrate_endpoint_singular(const std::function<double(double)>& f,
                                   double a, double b, double bl, double bh,
                                   int levels, int nodes) {
  return endpoint_singular_impl<double>(f, a, b, bl, bh, levels, nodes);
}

std::complex<double> integrate_endpoint_singular_c(
    const std::function<std::complex<double>(double)>& f,
    double a, double b, double bl, double bh, int levels, int nodes) {
  return endpoint_singular_impl<std::complex<double>>(f, a, b, bl, bh, levels, nodes);
}

namespace {

template <typename T, typename F>
T power_osc_impl(const F& f, double lo, double hi, double beta, double omega,
                 int nodes, double head_cap) {
  if (hi <= lo) return T{};
  constexpr double kPi = 3.14159265358979323846;
  double width = (omega > 0.0) ? kPi / (2.0 * omega) : (hi - lo);
  width = std::min(width, hi - lo);
  T acc{};
  double cur = lo;
  if (lo <= 0.0) {
    double head = std::min(hi, width);
    if (head_cap > 0.0) head = std::min(head, head_cap);
    const GaussRule& r = gauss_jacobi(nodes, 0.0, beta);
    const double c = 0.5 * head, h = 0.5 * head;
    T panel{};
    for (std::size_t i = 0; i < r.x.size(); ++i)
      panel += r.w[i] * f(c + h * r.x[i]);
    acc += panel * (h * std::pow(h, beta));
    cur = head;
  }
  const GaussRule& leg = gauss_legendre(nodes);
  while (cur < hi) {
    const double step = std::min(width, cur);
    const double next = std::min(hi, cur + step);
    const double c = 0.5 * (cur + next), h = 0.5 * (next - cur);
    T panel{};
    for (std::size_t i = 0; i < leg.x.size(); ++i) {
      const double w = c + h * leg.x[i];
      panel += leg.w[i] * std::pow(w, beta) * f(w);
    }
    acc += panel * h;
    cur = next;
  }
  return acc;
}

}  // namespace

double integrate_power_osc(const std::function<double(double)>& f, double lo,
                           double hi, double beta, double omega, int nodes,
                           double head_cap) {
  return power_osc_impl<double>(f, lo, hi, beta, omega, nodes, head_cap);
}

std::complex<double> integrate_power_osc_c(
    const std::function<std::complex<double>(double)>& f, double lo, double hi,
    double beta, double omega, int nodes, double head_cap) {
  return power_osc_impl<std::complex<double>>(f, lo, hi, beta, omega, nodes,
                                              head_cap);
}

std::complex<double> osc_power_tail(double omega, double q, double R,
                                    double* err_out) {
  if (!(q > 1.0) || !(R > 0.0))
    throw std::invalid_argument("osc_power_tail needs q > 1 and R > 0");
  if (omega == 0.0) {
    if (err_out) *err_out = 0.0;
    return {std::pow(R, 1.0 - q) / (q - 1.0), 0.0};
  }
  const std::complex<double> iw(0.0, omega);
  // E(q) = -e^{i w R} R^{-q} / (i w) + (q / (i w)) E(q+1); unroll and stop at
  // the smallest term of the (asymptotic) series.
  const std::complex<double> lead = -std::exp(iw * R) / iw;
  std::complex<double> factor = std::pow(R, -q);
  std::complex<double> acc{0.0, 0.0};
  double prev = std::abs(lead) * std::abs(factor);
  double neglected = prev;
  for (int k = 0; k < 48; ++k) {
    const std::complex<double> term = lead * factor;
    const double mag = std::abs(term);
    if (k > 0 && mag >= prev) {  // series started diverging
      neglected = mag;
      break;
    }
    acc += term;
    prev = mag;
    neglected = mag * (q + k) / (std::abs(omega) * R);
    if (neglected < 1e-18 * std::abs(acc) + 1e-300) break;
    factor *= (q + k) / (iw * R);
  }
  if (err_out) *err_out = neglected;
  return acc;
}

double pairwise_sum(std::vector<double>& terms) {
  if (terms.empty()) return 0.0;
  std::size_t n = terms.size();
  while (n > 1) {
    std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < n / 2; ++i) terms[i] = terms[2 * i] + terms[2 * i + 1];
    if (n % 2 == 1) terms[n / 2] = terms[n - 1];
    n = half;
  }
  return terms[0];
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  unsigned nt = threads > 0 ? static_cast<unsigned>(threads)
                            : std::max(1u, std::thread::hardware_concurrency());
  nt = std::min<unsigned>(nt, static_cast<unsigned>(n));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += nt) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace fracfield
