#include "ptcavity/hysteresis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ptcavity/error.hpp"

namespace ptcavity {

namespace {

void require_coupling(const SystemParams& p) {
  if (p.G == 0.0) throw Error(ErrorKind::ZeroCoupling, "G must be nonzero");
}

void require_branches(const SystemParams& p) {
  if (!(compute_rho(p) > 1.0)) {
    throw Error(ErrorKind::BelowThreshold,
                "rho <= 1 at G=" + std::to_string(p.G) + ": no non-zero branches");
  }
}

// Safeguarded Newton on an increasing function with f(lo) <= 0 <= f(hi).
template <class F, class DF>
double increasing_root(F f, DF df, double lo, double hi, double guess) {
  double x = std::clamp(guess, lo, hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (fx < 0.0) lo = x; else hi = x;
    const double d = df(x);
    double next = (d > 0.0) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4e-16 * std::max(1.0, std::abs(next))) return next;
    if (next == lo || next == hi) return next;
    x = next;
  }
  return x;
}

void push_unique(std::vector<double>& roots, double r) {
  for (double q : roots) {
    if (std::abs(q - r) <= 1e-12 * std::max(1.0, std::abs(r))) return;
  }
  roots.push_back(r);
}

}  // namespace

std::complex<double> b_from_a(const SystemParams& p, std::complex<double> a) {
  require_coupling(p);
  const std::complex<double> factor(p.beta * std::norm(a), p.kappa);
  return factor * a / std::polar(p.G, p.phi);
}

double QuadratureCubic::turning_point() const {
  return std::sqrt(-c1 / (3.0 * c3));
}

QuadratureCubic quadrature_cubic(const SystemParams& p, double phi0) {
  require_coupling(p);
  return {p.beta * std::cos(phi0) / (4.0 * p.G), p.kappa * std::sin(phi0) / p.G};
}

double quadrature_map(const SystemParams& p, double phi0, double X_a) {
  return quadrature_cubic(p, phi0)(X_a);
}

std::vector<double> solve_quadrature_cubic(const QuadratureCubic& cubic, double X_b) {
  std::vector<double> roots;
  if (cubic.c3 == 0.0) {
    if (cubic.c1 != 0.0) roots.push_back(X_b / cubic.c1);
    return roots;
  }
  // Monic form X^3 + s X - t.
  const double s = cubic.c1 / cubic.c3;
  const double t = X_b / cubic.c3;
  auto f = [&](double x) { return x * (x * x + s) - t; };
  auto df = [&](double x) { return 3.0 * x * x + s; };
  const double bound = 1.0 + std::max(std::abs(s), std::abs(t));

  if (s >= 0.0) {
    const double guess = (s > 0.0) ? t / s : std::cbrt(t);
    roots.push_back(increasing_root(f, df, -bound, bound, guess));
    return roots;
  }

  const double xs = std::sqrt(-s / 3.0);
  const double local_max = -xs * (xs * xs + s);  // value of x^3 + s x at -xs
  const double local_min = -local_max;           // odd symmetry
  // Within a few ulps of a fold edge the root is double: (x + xs)^2 (x - 2 xs).
  const double edge_tol = 4.0 * std::numeric_limits<double>::epsilon() * local_max;
  if (std::abs(t - local_max) <= edge_tol) return {-xs, 2.0 * xs};
  if (std::abs(t - local_min) <= edge_tol) return {-2.0 * xs, xs};
  if (t <= local_max) {
    roots.push_back(increasing_root(f, df, -bound, -xs, -bound));
  }
  if (t >= local_min && t <= local_max) {
    // f decreases on [-xs, xs].
    auto neg = [&](double x) { return -f(x); };
    auto dneg = [&](double x) { return -df(x); };
    push_unique(roots, increasing_root(neg, dneg, -xs, xs, t / s));
  }
  if (t >= local_min) {
    push_unique(roots, increasing_root(f, df, xs, bound, bound));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> invert_map(const SystemParams& p, double phi0, double X_b) {
  return solve_quadrature_cubic(quadrature_cubic(p, phi0), X_b);
}

namespace {

std::vector<Valuation> tag(const std::vector<double>& roots, Branch branch) {
  std::vector<Valuation> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    out.push_back({roots[i], branch, roots.size() == 3 && i == 1});
  }
  return out;
}

}  // namespace

Multistability multistability_count(const SystemParams& p, int k, double X_b) {
  require_coupling(p);
  require_branches(p);
  Multistability m;
  const double phi_up = phi_matching(p, branch_displacement(p, Branch::Upper), k);
  const double phi_lo = phi_matching(p, branch_displacement(p, Branch::Lower), k);
  m.upper = tag(invert_map(p, phi_up, X_b), Branch::Upper);
  m.lower = tag(invert_map(p, phi_lo, X_b), Branch::Lower);

  std::vector<double> all;
  for (const auto& v : m.upper) all.push_back(v.X_a);
  for (const auto& v : m.lower) all.push_back(v.X_a);
  std::sort(all.begin(), all.end());
  for (double r : all) {
    if (m.distinct.empty() || r - m.distinct.back() > 1e-8) m.distinct.push_back(r);
  }
  return m;
}

HysteresisCurve trace_curve(const SystemParams& p, Branch branch, int k,
                            double X_a_min, double X_a_max, std::size_t n) {
  require_coupling(p);
  require_branches(p);
  if (branch == Branch::Zero) {
    throw Error(ErrorKind::InvalidGrid, "hysteresis curves exist only on the non-zero branches");
  }
  if (n < 2 || !std::isfinite(X_a_min) || !std::isfinite(X_a_max) || !(X_a_max > X_a_min)) {
    throw Error(ErrorKind::InvalidGrid, "curve needs n >= 2 and a finite, non-empty X_a range");
  }
  HysteresisCurve curve;
  curve.branch = branch;
  curve.k = k;
  curve.phi0 = phi_matching(p, branch_displacement(p, branch), k);
  curve.cubic = quadrature_cubic(p, curve.phi0);
  curve.samples.reserve(n);
  const double last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double X_a = (i + 1 == n) ? X_a_max
                                    : X_a_min + (X_a_max - X_a_min) * (static_cast<double>(i) / last);
    curve.samples.emplace_back(X_a, curve.cubic(X_a));
  }
  if (curve.cubic.folds()) {
    const double xs = curve.cubic.turning_point();
    const double v = curve.cubic(xs);
    curve.fold = std::make_pair(std::min(v, -v), std::max(v, -v));
  }
  return curve;
}

}  // namespace ptcavity
