#include "ptcavity/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "ptcavity/core_model.hpp"
#include "ptcavity/error.hpp"

namespace ptcavity {

const char* to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::Decayed: return "Decayed";
    case Outcome::Diverged: return "Diverged";
    case Outcome::Settled: return "Settled";
    case Outcome::MaxTime: return "MaxTime";
  }
  return "Unknown";
}

double ModeState::norm() const {
  return std::sqrt(std::norm(a) + std::norm(b) + x * x + v * v);
}

bool ModeState::finite() const {
  return std::isfinite(a.real()) && std::isfinite(a.imag()) && std::isfinite(b.real()) &&
         std::isfinite(b.imag()) && std::isfinite(x) && std::isfinite(v);
}

ModeState derivatives(const SystemParams& p, const ModeState& s) {
  using namespace std::complex_literals;
  const std::complex<double> coupling = 1i * std::polar(p.G, p.phi);
  ModeState d;
  d.x = s.v;
  d.v = -p.Gamma_m * s.v - p.omega_M * p.omega_M * s.x + p.radiation_force() * std::norm(s.a);
  d.a = 1i * (p.eta * s.x) * s.a - p.kappa * s.a - coupling * s.b;
  d.b = -1i * p.delta * s.b - p.gamma * s.b - coupling * s.a;
  return d;
}

double recommended_dt(const SystemParams& p, const ModeState& s) {
  const double fastest = std::max({p.kappa, p.gamma, p.omega_M, std::abs(p.delta), p.G,
                                   p.Gamma_m, std::abs(p.eta * s.x), 1e-300});
  return 0.05 / fastest;
}

namespace {

template <class Rhs>
ModeState rk4_step(const Rhs& f, const ModeState& s, double h) {
  const ModeState k1 = f(s);
  const ModeState k2 = f(s + (0.5 * h) * k1);
  const ModeState k3 = f(s + (0.5 * h) * k2);
  const ModeState k4 = f(s + h * k3);
  return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void check_step_args(double dt, double T) {
  if (!(dt > 0.0) || !std::isfinite(dt) || !(T >= dt) || !std::isfinite(T)) {
    throw Error(ErrorKind::InvalidParams, "integration needs 0 < dt <= T, both finite");
  }
}

std::size_t step_count(double dt, double T) {
  return static_cast<std::size_t>(std::ceil(T / dt * (1.0 - 1e-12)));
}

[[noreturn]] void non_finite(double t) {
  throw Error(ErrorKind::NonFiniteState, "state became non-finite at t=" + std::to_string(t));
}

// Norm used for thresholds; the frozen atomic amplitude is excluded in driven mode.
using NormFn = double (*)(const ModeState&);

double full_norm(const ModeState& s) { return s.norm(); }
double driven_norm(const ModeState& s) {
  return std::sqrt(std::norm(s.a) + s.x * s.x + s.v * s.v);
}

template <class Rhs>
Trajectory run(const Rhs& f, NormFn norm, const ModeState& s0, double dt, double T,
               std::size_t stride) {
  check_step_args(dt, T);
  stride = std::max<std::size_t>(stride, 1);
  if (!s0.finite()) non_finite(0.0);

  Trajectory tr;
  tr.dt = dt;
  tr.stride = stride;
  tr.times.push_back(0.0);
  tr.states.push_back(s0);

  const double n0 = norm(s0);
  const double ref = n0 > 0.0 ? n0 : 1.0;
  const std::size_t n = step_count(dt, T);
  ModeState s = s0;
  for (std::size_t i = 1; i <= n; ++i) {
    s = rk4_step(f, s, dt);
    const double t = static_cast<double>(i) * dt;
    if (!s.finite()) non_finite(t);
    const double ns = norm(s);
    bool stop = false;
    if (ns > Thresholds::diverged * ref) {
      tr.outcome = Outcome::Diverged;
      stop = true;
    } else if (n0 > 0.0 && ns < Thresholds::decayed * ref) {
      tr.outcome = Outcome::Decayed;
      stop = true;
    }
    if (stop || i % stride == 0 || i == n) {
      tr.times.push_back(t);
      tr.states.push_back(s);
    }
    tr.steps = i;
    if (stop) break;
  }
  return tr;
}

}  // namespace

Trajectory integrate(const SystemParams& p, const ModeState& s0, double dt, double T,
                     std::size_t stride) {
  auto f = [&p](const ModeState& s) { return derivatives(p, s); };
  return run(f, full_norm, s0, dt, T, stride);
}

SettleResult settle(const SystemParams& p, const ModeState& s0, double T_max, double dt) {
  if (!(dt > 0.0)) dt = recommended_dt(p, s0);
  check_step_args(dt, T_max);
  if (!s0.finite()) non_finite(0.0);
  auto f = [&p](const ModeState& s) { return derivatives(p, s); };

  const double period = 2.0 * std::numbers::pi / p.omega_M;
  const std::size_t per_period = std::max<std::size_t>(1, step_count(dt, period));
  const std::size_t total = step_count(dt, T_max);
  const double n0 = s0.norm();
  const double ref = n0 > 0.0 ? n0 : 1.0;

  SettleResult out;
  ModeState s = s0;
  ModeState mark = s0;
  for (std::size_t i = 1; i <= total; ++i) {
    s = rk4_step(f, s, dt);
    const double t = static_cast<double>(i) * dt;
    if (!s.finite()) non_finite(t);
    out.state = s;
    out.time = t;
    const double ns = s.norm();
    if (ns > Thresholds::diverged * ref) {
      out.outcome = Outcome::Diverged;
      return out;
    }
    if (n0 > 0.0 && ns < Thresholds::decayed * ref) {
      out.outcome = Outcome::Decayed;
      return out;
    }
    if (i % per_period == 0) {
      if ((s - mark).norm() < Thresholds::settled * ns) {
        out.outcome = Outcome::Settled;
        return out;
      }
      mark = s;
    }
  }
  out.outcome = Outcome::MaxTime;
  return out;
}

std::vector<SettleResult> settle_ensemble(const std::vector<EnsembleMember>& members,
                                          double T_max) {
  std::vector<SettleResult> out(members.size());
  std::vector<std::exception_ptr> errors(members.size());
  const long n = static_cast<long>(members.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = settle(members[i].p, members[i].s0, T_max);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  // lowest failing index wins, as in the serial loop
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<SettleResult> settle_ensemble_serial(const std::vector<EnsembleMember>& members,
                                                 double T_max) {
  std::vector<SettleResult> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(settle(m.p, m.s0, T_max));
  return out;
}

Trajectory driven_mode(const SystemParams& p, const ModeState& s0, double dt, double T,
                       std::size_t stride) {
  if (p.N == 0) throw Error(ErrorKind::InvalidParams, "driven mode needs N > 0");
  const double drive = bogoliubov_drive(p);
  const double frozen = std::sqrt(static_cast<double>(p.N));
  const double force = p.radiation_force();
  auto f = [&](const ModeState& s) {
    using namespace std::complex_literals;
    ModeState d;
    d.x = s.v;
    d.v = -p.Gamma_m * s.v - p.omega_M * p.omega_M * s.x + force * std::norm(s.a);
    // -i G e^{i pi/2} sqrt(N) = +G sqrt(N)
    d.a = 1i * (p.eta * s.x) * s.a - p.kappa * s.a + drive;
    d.b = 0.0;
    return d;
  };
  ModeState start = s0;
  start.b = frozen;
  return run(f, driven_norm, start, dt, T, stride);
}

}  // namespace ptcavity
