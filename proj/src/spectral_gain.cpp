#include "ptcavity/spectral_gain.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "ptcavity/error.hpp"

namespace ptcavity {

const char* to_string(GainClass c) noexcept {
  switch (c) {
    case GainClass::NetGain: return "NetGain";
    case GainClass::NetLoss: return "NetLoss";
    case GainClass::Balanced: return "Balanced";
  }
  return "Unknown";
}

double balanced_tolerance(const SystemParams& p) {
  return 1e-6 * (p.kappa + p.gamma);
}

CharQuadratic char_quadratic(const SystemParams& p, double x) {
  const double ex = p.eta * x;
  CharQuadratic q;
  q.b = {p.kappa + p.gamma, p.delta - ex};
  q.c = std::complex<double>(p.delta * ex + p.kappa * p.gamma,
                             p.delta * p.kappa - p.gamma * ex) +
        std::polar(p.G * p.G, 2.0 * p.phi);
  return q;
}

std::complex<double> discriminant(const SystemParams& p, double x) {
  const double kg = p.kappa - p.gamma;
  const double de = p.delta + p.eta * x;
  const double G2 = p.G * p.G;
  const double c2 = std::cos(2.0 * p.phi);
  const double s2 = std::sin(2.0 * p.phi);
  return {kg * kg - de * de - 4.0 * G2 * c2, -2.0 * (kg * de + 2.0 * G2 * s2)};
}

double theta_angle(const SystemParams& p, double x, int k) {
  const std::complex<double> D = discriminant(p, x);
  const double scale = p.kappa + p.gamma;
  if (std::abs(D) < 1e-12 * scale * scale) {
    throw Error(ErrorKind::DegenerateDiscriminant, "discriminant vanishes");
  }
  return -std::arg(D) + 2.0 * std::numbers::pi * k;
}

double sqrt_discriminant_real(const SystemParams& p, double x, int k) {
  const double theta = theta_angle(p, x, k);
  return std::sqrt(std::abs(discriminant(p, x))) * std::cos(0.5 * theta);
}

double gain_margin(const SystemParams& p, double x) {
  const double G2 = p.G * p.G;
  const double gs = G2 * std::sin(2.0 * p.phi);
  const double gc = G2 * std::cos(2.0 * p.phi);
  const double sum = p.kappa + p.gamma;
  const double de = p.delta + p.eta * x;
  return gs * gs + (p.kappa - p.gamma) * de * gs - sum * sum * gc -
         p.kappa * p.gamma * (sum * sum + de * de);
}

std::array<std::complex<double>, 2> char_roots(const SystemParams& p, double x) {
  const CharQuadratic q = char_quadratic(p, x);
  const std::complex<double> sq = std::sqrt(discriminant(p, x));
  // Pick the sign that adds magnitudes, then recover the small root from the product.
  const double align = std::real(std::conj(q.b) * sq);
  const std::complex<double> big = -0.5 * (align >= 0.0 ? q.b + sq : q.b - sq);
  if (big == std::complex<double>(0.0, 0.0)) return {big, big};
  return {big, q.c / big};
}

double max_root_real(const SystemParams& p, double x) {
  const auto r = char_roots(p, x);
  return std::max(r[0].real(), r[1].real());
}

namespace {

GainClass classify_real_part(double re, double tol) {
  if (re > tol) return GainClass::NetGain;
  if (re < -tol) return GainClass::NetLoss;
  return GainClass::Balanced;
}

}  // namespace

GainClass classify(const SystemParams& p, double x) {
  return classify_real_part(max_root_real(p, x), balanced_tolerance(p));
}

GainSample gain_sample(const SystemParams& p, double x) {
  GainSample s;
  s.delta = p.delta;
  s.G = p.G;
  s.phi = p.phi;
  s.x = x;
  s.margin = gain_margin(p, x);
  s.roots = char_roots(p, x);
  s.classification = classify_real_part(std::max(s.roots[0].real(), s.roots[1].real()),
                                        balanced_tolerance(p));
  return s;
}

// Grid sweeps ----------------------------------------------------------------

const char* to_string(Axis axis) noexcept {
  switch (axis) {
    case Axis::Delta: return "delta";
    case Axis::G: return "G";
    case Axis::Phi: return "phi";
  }
  return "unknown";
}

Axis axis_from_string(const char* name) {
  if (std::strcmp(name, "delta") == 0) return Axis::Delta;
  if (std::strcmp(name, "G") == 0) return Axis::G;
  if (std::strcmp(name, "phi") == 0) return Axis::Phi;
  throw Error(ErrorKind::InvalidGrid, std::string("unknown sweep axis '") + name + "'");
}

void AxisSpec::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max)) {
    throw Error(ErrorKind::InvalidGrid, std::string("non-finite bounds on axis ") + to_string(axis));
  }
  if (count < 2) {
    throw Error(ErrorKind::InvalidGrid, std::string("axis ") + to_string(axis) + " needs count >= 2");
  }
  if (spacing == Spacing::Log && !(min > 0.0 && max > 0.0)) {
    throw Error(ErrorKind::InvalidGrid,
                std::string("log spacing on axis ") + to_string(axis) + " needs positive bounds");
  }
}

std::vector<double> AxisSpec::values() const {
  validate();
  std::vector<double> v(count);
  const double last = static_cast<double>(count - 1);
  if (spacing == Spacing::Linear) {
    for (std::size_t i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / last;
      v[i] = min + (max - min) * t;
    }
  } else {
    const double lo = std::log(min);
    const double hi = std::log(max);
    for (std::size_t i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / last;
      v[i] = std::exp(lo + (hi - lo) * t);
    }
  }
  // Endpoints exactly as declared.
  v.front() = min;
  v.back() = max;
  return v;
}

void GainSweep::validate() const {
  rows.validate();
  cols.validate();
  if (rows.axis == cols.axis) {
    throw Error(ErrorKind::InvalidGrid, "sweep axes must differ");
  }
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidGrid, "non-finite mirror displacement");
}

namespace {

void set_axis(SystemParams& p, Axis axis, double value) {
  switch (axis) {
    case Axis::Delta: p.delta = value; break;
    case Axis::G: p.G = value; break;
    case Axis::Phi: p.phi = value; break;
  }
}

GainGrid prepare(const GainSweep& sweep) {
  sweep.validate();
  GainGrid grid;
  grid.sweep = sweep;
  grid.row_values = sweep.rows.values();
  grid.col_values = sweep.cols.values();
  grid.samples.resize(grid.row_values.size() * grid.col_values.size());
  return grid;
}

GainSample cell(const SystemParams& base, const GainGrid& grid, std::size_t i, std::size_t j) {
  SystemParams p = base;
  set_axis(p, grid.sweep.rows.axis, grid.row_values[i]);
  set_axis(p, grid.sweep.cols.axis, grid.col_values[j]);
  return gain_sample(p, grid.sweep.x);
}

}  // namespace

GainGrid gain_map(const SystemParams& base, const GainSweep& sweep) {
  GainGrid grid = prepare(sweep);
  const auto nr = static_cast<std::ptrdiff_t>(grid.row_values.size());
  const std::size_t nc = grid.col_values.size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < nr; ++i) {
    const auto row = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < nc; ++j) {
      grid.samples[row * nc + j] = cell(base, grid, row, j);
    }
  }
  return grid;
}

GainGrid gain_map_serial(const SystemParams& base, const GainSweep& sweep) {
  GainGrid grid = prepare(sweep);
  const std::size_t nc = grid.col_values.size();
  for (std::size_t i = 0; i < grid.row_values.size(); ++i) {
    for (std::size_t j = 0; j < nc; ++j) {
      grid.samples[i * nc + j] = cell(base, grid, i, j);
    }
  }
  return grid;
}

}  // namespace ptcavity
