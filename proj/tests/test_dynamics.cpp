#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ptcavity/core_model.hpp"
#include "ptcavity/dynamics.hpp"
#include "ptcavity/error.hpp"
#include "ptcavity/hysteresis.hpp"
#include "ptcavity/oracles.hpp"
#include "ptcavity/spectral_gain.hpp"

using namespace ptcavity;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Upper-branch equilibrium with the coupling phase matched.
std::pair<SystemParams, ModeState> upper_equilibrium(double G, double delta) {
  SystemParams p;
  p.G = G;
  p.delta = delta;
  const auto s = steady_states(p, 0).at(1);
  p.phi = s.phi0;
  const std::complex<double> a = std::sqrt(p.eta * s.x_ss / p.beta);
  return {p, ModeState{a, b_from_a(p, a), s.x_ss, 0.0}};
}

ErrorKind kind_of(auto f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Config;
}

}  // namespace

TEST_CASE("equations of motion") {
  SystemParams p;
  const ModeState zero{};
  const ModeState d0 = derivatives(p, zero);
  CHECK(d0.norm() == 0.0);

  const ModeState s{{1.0, 0.0}, {0.0, 0.0}, 0.0, 0.0};
  const ModeState d = derivatives(p, s);
  CHECK(d.a == std::complex<double>(-p.kappa, 0.0));
  CHECK(std::abs(d.b - std::complex<double>(0.0, -p.G)) < 1e-15 * p.G);
  CHECK(d.x == 0.0);
  CHECK(d.v == Approx(p.radiation_force()).epsilon(1e-15));

  const ModeState m{{0.0, 0.0}, {0.0, 0.0}, 2.0, 0.5};
  const ModeState dm = derivatives(p, m);
  CHECK(dm.x == 0.5);
  CHECK(dm.v == Approx(-p.Gamma_m * 0.5 - p.omega_M * p.omega_M * 2.0).epsilon(1e-15));
}

TEST_CASE("matched equilibria are fixed points") {
  for (double G : {204.5, 345.0, 1000.0}) {
    for (double delta : {32000.0, 0.0, -1.5}) {
      SystemParams q;
      q.G = G;
      q.delta = delta;
      if (compute_rho(q) <= 1.0) continue;
      const auto [p, s] = upper_equilibrium(G, delta);
      const ModeState d = derivatives(p, s);
      const double scale = (std::abs(p.delta) + p.gamma + p.G + p.kappa) * s.norm();
      CHECK(d.norm() < 1e-10 * scale);
    }
  }
}

TEST_CASE("integrate bookkeeping") {
  SystemParams p;
  p.G = 2.0;
  p.delta = 2.0;
  const ModeState zero{};
  const Trajectory z = integrate(p, zero, 0.01, 1.0, 10);
  CHECK(z.outcome == Outcome::MaxTime);
  CHECK(z.steps == 100);
  REQUIRE(z.times.size() == 11);
  CHECK(z.times.back() == Approx(1.0).epsilon(1e-12));
  for (const auto& s : z.states) CHECK(s.norm() == 0.0);

  const Trajectory t = integrate(p, ModeState{{1e-3, 0.0}, {}, 0.0, 0.0}, 0.01, 1.005, 7);
  CHECK(t.steps == 101);
  CHECK(t.times.back() == Approx(1.01).epsilon(1e-12));
  CHECK(t.times[1] == Approx(0.07).epsilon(1e-12));

  CHECK(kind_of([&] { integrate(p, zero, 0.0, 1.0); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([&] { integrate(p, zero, -1.0, 1.0); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([&] { integrate(p, zero, 2.0, 1.0); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([&] { integrate(p, zero, NAN, 1.0); }) == ErrorKind::InvalidParams);
  ModeState bad;
  bad.x = NAN;
  CHECK(kind_of([&] { integrate(p, bad, 0.01, 1.0); }) == ErrorKind::NonFiniteState);
  SystemParams huge;
  huge.G = 1e300;
  CHECK(kind_of([&] { integrate(huge, ModeState{{1.0, 0.0}, {}, 0.0, 0.0}, 1.0, 1.0); }) ==
        ErrorKind::NonFiniteState);
}

TEST_CASE("decoupled mirror matches the closed-form linear modes") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    SystemParams p;
    p.eta = 0.0;
    p.kappa = oracles::log_uniform(rng, 0.5, 5.0);
    p.gamma = oracles::log_uniform(rng, 0.5, 5.0);
    p.G = oracles::uniform(rng, 0.0, 3.0);
    p.delta = oracles::uniform(rng, -5.0, 5.0);
    p.phi = oracles::uniform(rng, -kPi, kPi);
    const ModeState s0{{1.0, 0.2}, {-0.3, 0.5}, 0.0, 0.0};
    const double T = 2.0;
    const Trajectory tr = integrate(p, s0, 1e-3, T, 100000);
    std::complex<double> a, b;
    oracles::linear_modes_exact(p, 0.0, s0.a, s0.b, tr.times.back(), a, b);
    const auto& end = tr.states.back();
    const double scale = std::abs(a) + std::abs(b);
    CHECK(std::abs(end.a - a) < 1e-9 * scale);
    CHECK(std::abs(end.b - b) < 1e-9 * scale);
    CHECK(end.x == 0.0);
  }
}

TEST_CASE("RK4 error falls by sixteen when the step halves") {
  SystemParams p;
  p.eta = 0.0;
  p.G = 2.0;
  p.delta = 1.0;
  p.phi = 0.4;
  const ModeState s0{{1.0, 0.0}, {0.0, 0.5}, 0.0, 0.0};
  const double T = 1.0;
  std::complex<double> a, b;
  oracles::linear_modes_exact(p, 0.0, s0.a, s0.b, T, a, b);
  auto err = [&](double dt) {
    const auto tr = integrate(p, s0, dt, T, 1u << 20);
    return std::abs(tr.states.back().a - a) + std::abs(tr.states.back().b - b);
  };
  const double ratio = err(0.02) / err(0.01);
  CHECK(ratio > 14.0);
  CHECK(ratio < 18.0);
}

TEST_CASE("settle outcomes") {
  SUBCASE("decayed") {
    SystemParams p;
    p.eta = 0.0;
    p.G = 0.0;
    const auto r = settle(p, ModeState{{1.0, 0.0}, {1.0, 0.0}, 0.0, 0.0}, 200.0);
    CHECK(r.outcome == Outcome::Decayed);
    // b dies first; a falls to 1e-12 of the initial norm sqrt(2)
    CHECK(r.time == Approx((std::log(1e12) - std::log(std::sqrt(2.0))) / p.kappa).epsilon(1e-3));
  }
  SUBCASE("diverged") {
    SystemParams p;
    p.eta = 0.0;
    p.delta = 0.0;
    p.G = 20.0;
    p.phi = 0.5 * std::atan(p.G * p.G / (p.kappa * p.gamma));
    REQUIRE(classify(p, 0.0) == GainClass::NetGain);
    const auto r = settle(p, ModeState{{1e-3, 0.0}, {}, 0.0, 0.0}, 100.0);
    CHECK(r.outcome == Outcome::Diverged);
  }
  SUBCASE("settled on the equilibrium") {
    const auto [p, s] = upper_equilibrium(345.0, 0.0);
    const auto r = settle(p, s, 100.0);
    CHECK(r.outcome == Outcome::Settled);
    CHECK((r.state - s).norm() < 1e-6 * s.norm());
    CHECK(r.time == Approx(2.0 * kPi / p.omega_M).epsilon(1e-2));
  }
  SUBCASE("max time") {
    SystemParams p;
    p.eta = 0.0;
    const auto r = settle(p, ModeState{{}, {}, 1.0, 0.0}, 5.0);
    CHECK(r.outcome == Outcome::MaxTime);
  }
}

TEST_CASE("ensemble matches the serial loop") {
  std::mt19937_64 rng(33);
  std::vector<EnsembleMember> members;
  for (int i = 0; i < 24; ++i) {
    SystemParams p;
    p.eta = i % 3 == 0 ? 0.0 : p.eta;
    p.G = oracles::uniform(rng, 0.0, 8.0);
    p.delta = oracles::uniform(rng, -8.0, 8.0);
    p.phi = oracles::uniform(rng, -kPi, kPi);
    members.push_back({p, ModeState{std::polar(1e-6, 0.3 * i), {}, 0.0, 0.0}});
  }
  const auto a = settle_ensemble(members, 20.0);
  const auto b = settle_ensemble_serial(members, 20.0);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].outcome == b[i].outcome);
    CHECK(a[i].time == b[i].time);
    CHECK(a[i].state.a == b[i].state.a);
    CHECK(a[i].state.x == b[i].state.x);
  }
  members[5].s0.v = NAN;
  members[9].s0.v = INFINITY;
  try {
    settle_ensemble(members, 1.0);
    FAIL("expected NonFiniteState");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFiniteState);
  }
}

TEST_CASE("driven mode") {
  SystemParams p;
  p.kappa = 1.3;
  p.Gamma_m = 0.5;
  p.N = 4;
  p.G = 0.01;
  const double drive = bogoliubov_drive(p);
  CHECK(drive == Approx(0.02).epsilon(1e-15));
  const ModeState zero{};

  SUBCASE("frozen atoms") {
    const auto tr = driven_mode(p, zero, 0.01, 1.0, 50);
    for (const auto& s : tr.states) CHECK(s.b == std::complex<double>(2.0, 0.0));
  }
  SUBCASE("decoupled mirror relaxes to drive over kappa") {
    SystemParams d = p;
    d.eta = 0.0;
    const auto tr = driven_mode(d, zero, 0.01, 40.0, 100000);
    CHECK(std::abs(tr.states.back().a - drive / p.kappa) < 1e-9 * drive / p.kappa);
  }
  SUBCASE("mirror settles on the driven fixed point") {
    const auto tr = driven_mode(p, zero, 0.01, 150.0, 1000000);
    const double x = oracles::driven_fixed_point_x(p, drive);
    CHECK(tr.states.back().x == Approx(x).epsilon(1e-5));
  }
  SUBCASE("no drive decays") {
    SystemParams d = p;
    d.eta = 0.0;
    d.G = 0.0;
    const auto tr = driven_mode(d, ModeState{{1.0, 0.0}, {}, 0.0, 0.0}, 0.01, 100.0);
    CHECK(tr.outcome == Outcome::Decayed);
  }
  SUBCASE("needs atoms") {
    SystemParams d = p;
    d.N = 0;
    CHECK(kind_of([&] { driven_mode(d, zero, 0.01, 1.0); }) == ErrorKind::InvalidParams);
  }
}
