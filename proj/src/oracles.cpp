#include "ptcavity/oracles.hpp"

#include <cmath>
#include <limits>

namespace ptcavity::oracles {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

double rho_direct(double kappa, double gamma, double delta, double G) {
  const double G4 = G * G * G * G;
  return G4 / (kappa * kappa * (gamma * gamma + delta * delta));
}

double threshold_G_scan(double kappa, double gamma, double delta) {
  double lo = 1e-6;
  double hi = lo;
  while (rho_direct(kappa, gamma, delta, hi) < 1.0) {
    lo = hi;
    hi *= 1.01;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (rho_direct(kappa, gamma, delta, mid) >= 1.0) hi = mid; else lo = mid;
  }
  return hi;
}

namespace {

double branch_shape(double kappa, double gamma, double delta, double G) {
  return std::sqrt(rho_direct(kappa, gamma, delta, G) - 1.0);
}

double second_difference(double kappa, double gamma, double delta, double G) {
  const double h = 1e-4 * G;
  return (branch_shape(kappa, gamma, delta, G + h) - 2.0 * branch_shape(kappa, gamma, delta, G) +
          branch_shape(kappa, gamma, delta, G - h)) /
         (h * h);
}

}  // namespace

double saddle_G_numeric(double kappa, double gamma, double delta) {
  const double start = threshold_G_scan(kappa, gamma, delta) * 1.01;
  double lo = start;
  double hi = start;
  while (second_difference(kappa, gamma, delta, hi) < 0.0) {
    lo = hi;
    hi *= 1.02;
  }
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (second_difference(kappa, gamma, delta, mid) < 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double meeting_delta_numeric(double kappa, double gamma, double G) {
  if (rho_direct(kappa, gamma, 0.0, G) < 1.0) return std::numeric_limits<double>::quiet_NaN();
  double lo = 0.0;
  double hi = 1.0;
  while (rho_direct(kappa, gamma, hi, G) >= 1.0) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (rho_direct(kappa, gamma, mid, G) >= 1.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::complex<double> balance_expanded(const SystemParams& p, double x) {
  const double G2 = p.G * p.G;
  const double re = p.kappa * p.gamma + p.delta * p.eta * x + G2 * std::cos(2.0 * p.phi);
  const double im = p.kappa * p.delta - p.gamma * p.eta * x + G2 * std::sin(2.0 * p.phi);
  return {re, im};
}

void quadratic_roots_naive(std::complex<double> b, std::complex<double> c,
                           std::complex<double>& r1, std::complex<double>& r2) {
  using C = std::complex<long double>;
  const C bb(b.real(), b.imag());
  const C cc(c.real(), c.imag());
  const C sq = std::sqrt(bb * bb - 4.0L * cc);
  const C x1 = (-bb + sq) / 2.0L;
  const C x2 = (-bb - sq) / 2.0L;
  r1 = {static_cast<double>(x1.real()), static_cast<double>(x1.imag())};
  r2 = {static_cast<double>(x2.real()), static_cast<double>(x2.imag())};
}

namespace {

using CL = std::complex<long double>;

struct Block {
  CL m11, m12, m21, m22;
};

Block linear_block(const SystemParams& p, double x) {
  const CL i(0.0L, 1.0L);
  const CL coupling = -i * std::polar(static_cast<long double>(p.G), static_cast<long double>(p.phi));
  return {i * static_cast<long double>(p.eta * x) - static_cast<long double>(p.kappa), coupling,
          coupling, -i * static_cast<long double>(p.delta) - static_cast<long double>(p.gamma)};
}

}  // namespace

double max_real_eigenvalue(const SystemParams& p, double x) {
  const Block m = linear_block(p, x);
  const CL half_trace = (m.m11 + m.m22) / 2.0L;
  const CL det = m.m11 * m.m22 - m.m12 * m.m21;
  const CL nu = std::sqrt(half_trace * half_trace - det);
  return static_cast<double>(std::max((half_trace + nu).real(), (half_trace - nu).real()));
}

void linear_modes_exact(const SystemParams& p, double x, std::complex<double> a0,
                        std::complex<double> b0, double t, std::complex<double>& a,
                        std::complex<double>& b) {
  // exp(M t) = e^{mu t} [cosh(nu t) I + sinh(nu t)/nu (M - mu I)]
  const Block m = linear_block(p, x);
  const long double tl = t;
  const CL mu = (m.m11 + m.m22) / 2.0L;
  const CL det = m.m11 * m.m22 - m.m12 * m.m21;
  const CL nu = std::sqrt(mu * mu - det);
  const CL ch = std::cosh(nu * tl);
  const CL sh_over_nu = (std::abs(nu) * std::abs(tl) < 1e-9L) ? CL(tl) : std::sinh(nu * tl) / nu;
  const CL e = std::exp(mu * tl);
  const CL A0(a0.real(), a0.imag());
  const CL B0(b0.real(), b0.imag());
  const CL A = e * (ch * A0 + sh_over_nu * ((m.m11 - mu) * A0 + m.m12 * B0));
  const CL B = e * (ch * B0 + sh_over_nu * (m.m21 * A0 + (m.m22 - mu) * B0));
  a = {static_cast<double>(A.real()), static_cast<double>(A.imag())};
  b = {static_cast<double>(B.real()), static_cast<double>(B.imag())};
}

std::size_t brute_root_count(double c3, double c1, double X_b, double lo, double hi,
                             std::size_t n) {
  auto g = [&](double X) { return c3 * X * X * X + c1 * X - X_b; };
  std::size_t count = 0;
  double prev = g(lo);
  if (prev == 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    const double X = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    const double cur = g(X);
    if (cur == 0.0) {
      ++count;
    } else if (prev != 0.0 && (cur > 0.0) != (prev > 0.0)) {
      ++count;
    }
    prev = cur;
  }
  return count;
}

double driven_fixed_point_x(const SystemParams& p, double drive) {
  double x = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double ex = p.eta * x;
    const double intensity = drive * drive / (p.kappa * p.kappa + ex * ex);
    const double next = p.beta * intensity / p.eta;
    if (std::abs(next - x) <= 1e-15 * std::max(1e-300, std::abs(next))) return next;
    x = 0.5 * (x + next);
  }
  return x;
}

}  // namespace ptcavity::oracles
