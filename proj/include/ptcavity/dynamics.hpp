#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ptcavity/params.hpp"

namespace ptcavity {

/// Instantaneous state in the cavity rotating frame. x in displacement units,
/// v = dx/dt per microsecond.
struct ModeState {
  std::complex<double> a;
  std::complex<double> b;
  double x = 0.0;
  double v = 0.0;

  double norm() const;
  bool finite() const;

  ModeState& operator+=(const ModeState& o) {
    a += o.a;
    b += o.b;
    x += o.x;
    v += o.v;
    return *this;
  }
  friend ModeState operator+(ModeState l, const ModeState& r) { return l += r; }
  friend ModeState operator-(const ModeState& l, const ModeState& r) {
    return {l.a - r.a, l.b - r.b, l.x - r.x, l.v - r.v};
  }
  friend ModeState operator*(double s, const ModeState& m) {
    return {s * m.a, s * m.b, s * m.x, s * m.v};
  }
};

enum class Outcome { Decayed, Diverged, Settled, MaxTime };

const char* to_string(Outcome o) noexcept;

/// Early-termination thresholds relative to the initial norm.
struct Thresholds {
  static constexpr double diverged = 1e12;
  static constexpr double decayed = 1e-12;
  static constexpr double settled = 1e-8;  // relative change per mirror period
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ModeState> states;
  double dt = 0.0;
  std::size_t stride = 1;
  std::size_t steps = 0;
  Outcome outcome = Outcome::MaxTime;
};

/// Right-hand side of the mirror, cavity and atomic equations of motion.
ModeState derivatives(const SystemParams& p, const ModeState& s);

/// A step size of 0.05 over the fastest rate present in p and s.
double recommended_dt(const SystemParams& p, const ModeState& s);

/// Fixed-step classical RK4 from t = 0 to T. Records every stride-th step plus
/// the final state. Stops early on Diverged or Decayed (the latter only for a
/// non-zero initial state). Throws NonFiniteState with the offending time.
Trajectory integrate(const SystemParams& p, const ModeState& s0, double dt, double T,
                     std::size_t stride = 1);

struct SettleResult {
  Outcome outcome = Outcome::MaxTime;
  ModeState state;
  double time = 0.0;
};

/// Integrates until Decayed, Diverged, Settled (per-period change below the
/// threshold) or T_max. dt <= 0 selects recommended_dt.
SettleResult settle(const SystemParams& p, const ModeState& s0, double T_max, double dt = 0.0);

struct EnsembleMember {
  SystemParams p;
  ModeState s0;
};

/// settle() over independent members, in parallel. Same results as the serial version.
std::vector<SettleResult> settle_ensemble(const std::vector<EnsembleMember>& members, double T_max);
std::vector<SettleResult> settle_ensemble_serial(const std::vector<EnsembleMember>& members,
                                                 double T_max);

/// Frozen-atom comparison: b fixed at sqrt(N), phi fixed at pi/2, so the cavity
/// sees the drive G sqrt(N). Only (a, x, v) evolve; norms ignore b.
Trajectory driven_mode(const SystemParams& p, const ModeState& s0, double dt, double T,
                       std::size_t stride = 1);

}  // namespace ptcavity
