#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ptcavity/core_model.hpp"
#include "ptcavity/params.hpp"

namespace ptcavity {

/// Steady atomic amplitude implied by a steady cavity amplitude:
/// b = (beta |a|^2 + i kappa) a / (G e^{i phi}). Throws ZeroCoupling for G == 0.
std::complex<double> b_from_a(const SystemParams& p, std::complex<double> a);

/// X_b = c3 X_a^3 + c1 X_a under the zero common-phase convention.
struct QuadratureCubic {
  double c3 = 0.0;  // beta cos(phi0) / (4G)
  double c1 = 0.0;  // kappa sin(phi0) / G

  double operator()(double X_a) const { return X_a * (c3 * X_a * X_a + c1); }
  bool folds() const { return c3 * c1 < 0.0; }
  /// Turning points +-sqrt(-c1 / (3 c3)); only meaningful when folds().
  double turning_point() const;
};

QuadratureCubic quadrature_cubic(const SystemParams& p, double phi0);

double quadrature_map(const SystemParams& p, double phi0, double X_a);

/// All real roots of c3 X^3 + c1 X = X_b, ascending, duplicates merged.
std::vector<double> solve_quadrature_cubic(const QuadratureCubic& cubic, double X_b);

/// All real X_a with quadrature_map(X_a) == X_b, ascending.
std::vector<double> invert_map(const SystemParams& p, double phi0, double X_b);

struct Valuation {
  double X_a = 0.0;
  Branch branch = Branch::Upper;
  /// Middle root of a three-root fold. No dynamical stability claim is attached.
  bool inner = false;
};

struct Multistability {
  std::vector<Valuation> upper;
  std::vector<Valuation> lower;
  std::vector<double> distinct;  // union of both branches, merged within 1e-8
  std::size_t count() const { return distinct.size(); }
};

/// Inverts both branch cubics at index k. Throws BelowThreshold when rho <= 1.
Multistability multistability_count(const SystemParams& p, int k, double X_b);

struct HysteresisCurve {
  Branch branch = Branch::Upper;
  int k = 0;
  double phi0 = 0.0;
  QuadratureCubic cubic;
  std::vector<std::pair<double, double>> samples;  // (X_a, X_b)
  std::optional<std::pair<double, double>> fold;    // X_b interval with three roots
};

/// Uniform samples of X_a over [X_a_min, X_a_max]. Throws BelowThreshold when
/// rho <= 1 and InvalidGrid when n < 2 or branch is Zero.
HysteresisCurve trace_curve(const SystemParams& p, Branch branch, int k,
                            double X_a_min, double X_a_max, std::size_t n);

}  // namespace ptcavity
