#pragma once

// Reference computations that take a different route from the library code
// they are used to check. Nothing here calls into the implementation paths it
// verifies: formulas are re-expanded, roots are found by brute force, and the
// linear dynamics are solved in closed form.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>

#include "ptcavity/dynamics.hpp"
#include "ptcavity/params.hpp"

namespace ptcavity::oracles {

/// Uniform double in [0, 1) built from the top 53 bits, identical on every platform.
double uniform01(std::mt19937_64& rng);
double uniform(std::mt19937_64& rng, double lo, double hi);
double log_uniform(std::mt19937_64& rng, double lo, double hi);

/// rho written out as G^4 / (kappa^2 (gamma^2 + delta^2)).
double rho_direct(double kappa, double gamma, double delta, double G);

/// Smallest G with rho >= 1 found by scanning a geometric grid and refining by bisection.
double threshold_G_scan(double kappa, double gamma, double delta);

/// Inflection of x(G) = sqrt(rho - 1) located by a sign change of a central
/// second difference, refined by bisection.
double saddle_G_numeric(double kappa, double gamma, double delta);

/// Positive detuning with rho == 1 by bisection on delta.
double meeting_delta_numeric(double kappa, double gamma, double G);

/// Balance equation expanded into real and imaginary parts by hand.
std::complex<double> balance_expanded(const SystemParams& p, double x);

/// Roots of s^2 + b s + c by the textbook formula in long double.
void quadratic_roots_naive(std::complex<double> b, std::complex<double> c,
                           std::complex<double>& r1, std::complex<double>& r2);

/// Characteristic exponents of the (a, b) block read off the 2x2 matrix
/// by trace and determinant in long double.
double max_real_eigenvalue(const SystemParams& p, double x);

/// Closed-form (a(t), b(t)) of the linear two-mode system at fixed x
/// via eigen-decomposition of the 2x2 complex matrix.
void linear_modes_exact(const SystemParams& p, double x, std::complex<double> a0,
                        std::complex<double> b0, double t, std::complex<double>& a,
                        std::complex<double>& b);

/// Real roots of c3 X^3 + c1 X = X_b counted by sign changes on n uniform points.
std::size_t brute_root_count(double c3, double c1, double X_b, double lo, double hi,
                             std::size_t n);

/// Fixed point x = beta |E / (kappa - i eta x)|^2 / eta of the driven cavity by iteration.
double driven_fixed_point_x(const SystemParams& p, double drive);

}  // namespace ptcavity::oracles
