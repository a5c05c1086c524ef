#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "ptcavity/params.hpp"

namespace ptcavity {

enum class GainClass { NetGain, NetLoss, Balanced };

const char* to_string(GainClass c) noexcept;

/// Monic characteristic polynomial s^2 + b s + c of the coupled (a, b) modes.
struct CharQuadratic {
  std::complex<double> a{1.0, 0.0};
  std::complex<double> b;
  std::complex<double> c;
};

/// Half-width of the Balanced band on the largest root real part.
double balanced_tolerance(const SystemParams& p);

CharQuadratic char_quadratic(const SystemParams& p, double x);

/// b^2 - 4c written out in closed form.
std::complex<double> discriminant(const SystemParams& p, double x);

/// Polar angle of the discriminant, D = |D| exp(-i theta). The angle is resolved
/// in the correct quadrant and the k family steps by 2 pi, so
/// sqrt|D| cos(theta/2) is (-1)^k times the real part of the principal root.
/// Throws DegenerateDiscriminant when |D| < 1e-12 (kappa + gamma)^2.
double theta_angle(const SystemParams& p, double x, int k);

/// Real part of sqrt(D) on the k-th sheet, evaluated through theta_angle.
double sqrt_discriminant_real(const SystemParams& p, double x, int k);

/// Undivided net-gain margin; >= 0 exactly when the largest root real part is >= 0.
double gain_margin(const SystemParams& p, double x);

/// Roots of the characteristic quadratic, larger magnitude first.
std::array<std::complex<double>, 2> char_roots(const SystemParams& p, double x);

/// Largest real part over the two characteristic roots.
double max_root_real(const SystemParams& p, double x);

GainClass classify(const SystemParams& p, double x);

struct GainSample {
  double delta = 0.0;
  double G = 0.0;
  double phi = 0.0;
  double x = 0.0;
  double margin = 0.0;
  std::array<std::complex<double>, 2> roots{};
  GainClass classification = GainClass::NetLoss;
};

/// Pointwise evaluation: margin, roots and classification at p's (delta, G, phi).
GainSample gain_sample(const SystemParams& p, double x);

// Grid sweeps ----------------------------------------------------------------

enum class Axis { Delta, G, Phi };
enum class Spacing { Linear, Log };

const char* to_string(Axis axis) noexcept;
Axis axis_from_string(const char* name);

struct AxisSpec {
  Axis axis = Axis::Delta;
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 2;
  Spacing spacing = Spacing::Linear;

  /// Throws InvalidGrid on non-finite bounds, count < 2 or non-positive log bounds.
  void validate() const;
  std::vector<double> values() const;
};

/// Two swept axes; the remaining parameter keeps its value from the base params.
struct GainSweep {
  AxisSpec rows;
  AxisSpec cols;
  double x = 0.0;

  void validate() const;
};

/// Row-major grid: samples[i * cols + j] belongs to (rows[i], cols[j]).
struct GainGrid {
  GainSweep sweep;
  std::vector<double> row_values;
  std::vector<double> col_values;
  std::vector<GainSample> samples;

  const GainSample& at(std::size_t i, std::size_t j) const {
    return samples[i * col_values.size() + j];
  }
};

/// OpenMP-parallel sweep. Output is identical to gain_map_serial.
GainGrid gain_map(const SystemParams& base, const GainSweep& sweep);

/// Single-threaded reference sweep.
GainGrid gain_map_serial(const SystemParams& base, const GainSweep& sweep);

}  // namespace ptcavity
