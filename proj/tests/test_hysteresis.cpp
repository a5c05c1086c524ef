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

using namespace ptcavity;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

SystemParams fig5(double delta) {
  SystemParams p;
  p.G = 345.0;
  p.delta = delta;
  return p;
}

double phi0_of(const SystemParams& p, Branch b) {
  for (const auto& s : steady_states(p, 0)) {
    if (s.branch == b) return s.phi0;
  }
  FAIL("branch missing");
  return 0.0;
}

}  // namespace

TEST_CASE("b_from_a") {
  SystemParams p = fig5(0.0);
  CHECK(b_from_a(p, 0.0) == std::complex<double>(0.0, 0.0));

  std::mt19937_64 rng(21);
  for (int i = 0; i < 500; ++i) {
    p.phi = oracles::uniform(rng, -kPi, kPi);
    const std::complex<double> a(oracles::uniform(rng, -3.0, 3.0), oracles::uniform(rng, -3.0, 3.0));
    const auto b = b_from_a(p, a);
    const double I = std::norm(a);
    CHECK(std::norm(b) * p.G * p.G ==
          Approx((p.beta * p.beta * I * I + p.kappa * p.kappa) * I).epsilon(1e-12));
    // the cavity and mirror equations are stationary with x = beta |a|^2 / eta
    ModeState s{a, b, p.beta * I / p.eta, 0.0};
    const ModeState d = derivatives(p, s);
    const double scale = (p.beta * I + p.kappa) * std::abs(a) + 1e-300;
    CHECK(std::abs(d.a) <= 1e-12 * scale);
    CHECK(std::abs(d.v) <= 1e-12 * (p.omega_M * p.omega_M * std::abs(s.x) + 1e-300));
  }

  p.G = 0.0;
  try {
    b_from_a(p, 1.0);
    FAIL("expected ZeroCoupling");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroCoupling);
  }
}

TEST_CASE("quadrature map") {
  const SystemParams p = fig5(0.0);
  CHECK(quadrature_map(p, 0.3, 0.0) == 0.0);
  // cos(phi0) = 0 leaves a linear map
  const auto lin = quadrature_cubic(p, kPi / 2);
  CHECK(std::abs(lin.c3) < 1e-18);
  CHECK(lin.c1 == Approx(p.kappa / p.G).epsilon(1e-15));
  CHECK_FALSE(lin.folds());
  CHECK(quadrature_map(p, kPi / 2, 2.0) == Approx(2.0 * p.kappa / p.G).epsilon(1e-12));

  const auto c = quadrature_cubic(p, 0.4);
  CHECK(c.c3 == Approx(p.beta * std::cos(0.4) / (4.0 * p.G)).epsilon(1e-15));
  CHECK(c.c1 == Approx(p.kappa * std::sin(0.4) / p.G).epsilon(1e-15));
  // odd symmetry
  for (double X : {0.1, 0.7, 2.5}) CHECK(c(-X) == -c(X));
}

TEST_CASE("matched branch phases at fig5 detunings") {
  struct Row {
    double delta, upper, lower;
  };
  for (const Row r : {Row{0.0, 0.7854, -0.7854}, Row{-1.5, 0.5536, -1.0172}, Row{1.5, 1.0172, -0.5536}}) {
    const SystemParams p = fig5(r.delta);
    CHECK(phi0_of(p, Branch::Upper) == Approx(r.upper).epsilon(1e-3));
    CHECK(phi0_of(p, Branch::Lower) == Approx(r.lower).epsilon(1e-3));
    CHECK_FALSE(quadrature_cubic(p, phi0_of(p, Branch::Upper)).folds());
    CHECK(quadrature_cubic(p, phi0_of(p, Branch::Lower)).folds());
  }
}

TEST_CASE("cubic inversion") {
  SUBCASE("examples") {
    QuadratureCubic c{1.0, -3.0};  // X^3 - 3X, folds at +-1 with values -+2
    CHECK(c.turning_point() == Approx(1.0).epsilon(1e-15));
    const auto r0 = solve_quadrature_cubic(c, 0.0);
    REQUIRE(r0.size() == 3);
    CHECK(r0[0] == Approx(-std::sqrt(3.0)).epsilon(1e-14));
    CHECK(r0[1] == 0.0);
    CHECK(r0[2] == Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(solve_quadrature_cubic(c, 2.0).size() == 2);
    CHECK(solve_quadrature_cubic(c, -2.0).size() == 2);
    CHECK(solve_quadrature_cubic(c, 2.0 + 1e-9).size() == 1);
    CHECK(solve_quadrature_cubic(c, 1.0).size() == 3);
    const auto mono = solve_quadrature_cubic(QuadratureCubic{1.0, 3.0}, 4.0);
    REQUIRE(mono.size() == 1);
    CHECK(mono[0] == Approx(1.0).epsilon(1e-14));
    const auto linear = solve_quadrature_cubic(QuadratureCubic{0.0, 2.0}, 3.0);
    REQUIRE(linear.size() == 1);
    CHECK(linear[0] == 1.5);
  }
  SUBCASE("roots are roots and agree with a brute scan") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 300; ++i) {
      const QuadratureCubic c{oracles::uniform(rng, -2.0, 2.0), oracles::uniform(rng, -2.0, 2.0)};
      const double X_b = oracles::uniform(rng, -3.0, 3.0);
      const auto roots = solve_quadrature_cubic(c, X_b);
      for (std::size_t j = 1; j < roots.size(); ++j) CHECK(roots[j] > roots[j - 1]);
      for (double r : roots) {
        CHECK(std::abs(c(r) - X_b) <= 1e-12 * (std::abs(X_b) + std::abs(c.c1 * r) + std::abs(c.c3 * r * r * r)));
      }
      if (c.folds()) {
        const double tp = c.turning_point();
        const double edge = std::abs(c(tp));
        if (std::abs(std::abs(X_b) - edge) < 1e-6 * (edge + 1.0)) continue;
      }
      const double reach = 1.0 + 2.0 * std::sqrt(std::abs(c.c1 / c.c3)) +
                           2.0 * std::cbrt(std::abs(X_b / c.c3)) + std::abs(X_b / c.c1);
      CHECK(roots.size() == oracles::brute_root_count(c.c3, c.c1, X_b, -reach, reach, 100000));
    }
  }
  SUBCASE("invert_map uses the branch cubic") {
    const SystemParams p = fig5(0.0);
    const double phi0 = phi0_of(p, Branch::Lower);
    const auto roots = invert_map(p, phi0, 0.0);
    REQUIRE(roots.size() == 3);
    for (double r : roots) CHECK(std::abs(quadrature_map(p, phi0, r)) < 1e-12);
    CHECK(roots[2] == Approx(quadrature_cubic(p, phi0).turning_point() * std::sqrt(3.0)).epsilon(1e-12));
  }
}

TEST_CASE("fig5 multistability counts") {
  for (double delta : {0.0, -1.5, 1.5}) {
    const SystemParams p = fig5(delta);
    const auto lower = quadrature_cubic(p, phi0_of(p, Branch::Lower));
    const double edge = std::abs(lower(lower.turning_point()));
    // X_a = 0 is shared by both branches
    CHECK(multistability_count(p, 0, 0.0).count() == 3);
    CHECK(multistability_count(p, 0, 0.5 * edge).count() == 4);
    CHECK(multistability_count(p, 0, 2.0 * edge).count() == 2);
    CHECK(multistability_count(p, 0, -2.0 * edge).count() == 2);
    const auto m = multistability_count(p, 0, 0.5 * edge);
    CHECK(m.upper.size() == 1);
    CHECK(m.lower.size() == 3);
    std::size_t inner = 0;
    for (const auto& v : m.lower) inner += v.inner;
    CHECK(inner == 1);
    CHECK_FALSE(m.upper[0].inner);
  }
  struct Edge {
    double delta, width;
  };
  for (const Edge e : {Edge{0.0, 0.00205}, Edge{-1.5, 0.00314}, Edge{1.5, 0.00120}}) {
    const SystemParams p = fig5(e.delta);
    const auto c = quadrature_cubic(p, phi0_of(p, Branch::Lower));
    CHECK(std::abs(c(c.turning_point())) == Approx(e.width).epsilon(0.01));
  }

  try {
    multistability_count(SystemParams{}, 0, 0.0);
    FAIL("expected BelowThreshold");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BelowThreshold);
  }
}

TEST_CASE("trace_curve") {
  const SystemParams p = fig5(-1.5);
  const auto c = trace_curve(p, Branch::Lower, 0, -4.0, 4.0, 401);
  REQUIRE(c.samples.size() == 401);
  CHECK(c.samples.front().first == -4.0);
  CHECK(c.samples.back().first == 4.0);
  CHECK(c.samples[200].first == 0.0);
  for (const auto& [X_a, X_b] : c.samples) CHECK(X_b == quadrature_map(p, c.phi0, X_a));
  REQUIRE(c.fold.has_value());
  CHECK(c.fold->first == -c.fold->second);
  // the slope vanishes at the turning point
  const double tp = c.cubic.turning_point();
  CHECK(std::abs(3.0 * c.cubic.c3 * tp * tp + c.cubic.c1) < 1e-15);

  const auto u = trace_curve(p, Branch::Upper, 0, -4.0, 4.0, 11);
  CHECK_FALSE(u.fold.has_value());

  auto kind = [&](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Config;
  };
  CHECK(kind([&] { trace_curve(p, Branch::Upper, 0, -1.0, 1.0, 1); }) == ErrorKind::InvalidGrid);
  CHECK(kind([&] { trace_curve(p, Branch::Zero, 0, -1.0, 1.0, 5); }) == ErrorKind::InvalidGrid);
  CHECK(kind([&] { trace_curve(SystemParams{}, Branch::Upper, 0, -1.0, 1.0, 5); }) ==
        ErrorKind::BelowThreshold);
}
