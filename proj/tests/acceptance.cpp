// One line per acceptance criterion; exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

#include "ptcavity/cli/commands.hpp"
#include "ptcavity/cli/verify.hpp"
#include "ptcavity/core_model.hpp"
#include "ptcavity/hysteresis.hpp"
#include "ptcavity/spectral_gain.hpp"

using namespace ptcavity;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 42;
constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, double limit_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("threw: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = v.ok && s < limit_s;
  failures += !ok;
  std::printf("[%s] %s %s: %s (%.3f s, limit %g s)\n", ok ? "PASS" : "FAIL", id, title, v.detail.c_str(), s,
              limit_s);
  std::fflush(stdout);
}

Verdict from_check(const cli::CheckResult& r) {
  char buf[200];
  if (r.tolerance > 0.0) {
    std::snprintf(buf, sizeof buf, "%s %zu/%zu cases, max error %.3g (tol %.3g)", r.name.c_str(),
                  r.cases - r.failures, r.cases, r.max_error, r.tolerance);
  } else {
    std::snprintf(buf, sizeof buf, "%s %zu/%zu cases (%s)", r.name.c_str(), r.cases - r.failures, r.cases,
                  r.scale.c_str());
  }
  return {r.passed(), buf};
}

Verdict all_of(std::initializer_list<cli::CheckResult> rs) {
  Verdict v{true, ""};
  for (const auto& r : rs) {
    const Verdict one = from_check(r);
    v.ok = v.ok && one.ok;
    v.detail += (v.detail.empty() ? "" : "; ") + one.detail;
  }
  return v;
}

// Distinct-root counts seen over a dense X_b scan covering every fold of both branches.
std::set<std::size_t> count_set(double delta) {
  SystemParams p;
  p.G = 345.0;
  p.delta = delta;
  double reach = 0.0;
  for (const auto& s : steady_states(p, 0)) {
    if (s.branch == Branch::Zero) continue;
    const auto c = quadrature_cubic(p, s.phi0);
    reach = std::max(reach, c.folds() ? std::abs(c(c.turning_point())) : 0.0);
  }
  reach = reach > 0.0 ? 2.0 * reach : 1e-2;
  std::set<std::size_t> seen;
  const int n = 20001;
  for (int i = 0; i < n; ++i) {
    const double X_b = -reach + 2.0 * reach * i / (n - 1);
    seen.insert(multistability_count(p, 0, X_b).count());
  }
  return seen;
}

std::string run_verify(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("ptcavity_acceptance_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  const std::string out = dir.string();
  const char* argv[] = {"ptcavity", "verify", "--seed", "42", "--out", out.c_str()};
  std::ostringstream o, e;
  if (cli::run_cli(6, argv, o, e) != cli::kOk) throw std::runtime_error("verify exited non-zero: " + e.str());
  std::ifstream in(dir / "verify_report.json", std::ios::binary);
  std::string bytes{std::istreambuf_iterator<char>(in), {}};
  fs::remove_all(dir);
  return bytes;
}

}  // namespace

int main() {
  criterion("AC1", "branch threshold", 1.0, [] {
    const double G = threshold_G(SystemParams{});
    const double off = std::abs(G - 204.0) / 204.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "G* = %.6f MHz, %.3f%% from 204", G, 100.0 * off);
    return Verdict{off < 0.01, buf};
  });

  criterion("AC2", "balance residual", 5.0, [] { return from_check(cli::checks::balance_residual(kSeed, 1000)); });

  criterion("AC3", "gain-classification oracle", 10.0,
            [] { return from_check(cli::checks::sign_equivalence(kSeed, 10000)); });

  criterion("AC4", "steady-state equality", 2.0,
            [] { return from_check(cli::checks::steady_equality(kSeed, 1000)); });

  // one scan per detuning, timed under AC5a, shared by the sub-criteria
  std::set<std::size_t> r0, rm, rp;
  auto range_text = [](const std::set<std::size_t>& r) {
    std::string t = "{";
    for (std::size_t c : r) t += (t.size() > 1 ? "," : "") + std::to_string(c);
    return t + "}";
  };
  criterion("AC5a", "tristable at delta=0", 2.0, [&] {
    r0 = count_set(0.0);
    rm = count_set(-1.5);
    rp = count_set(1.5);
    return Verdict{r0.count(3) == 1, "counts over X_b " + range_text(r0)};
  });
  criterion("AC5b", "quadruply stable at delta=-1.5", 1.0, [&] {
    return Verdict{rm.count(4) == 1, "counts over X_b " + range_text(rm)};
  });
  criterion("AC5c", "single root for all X_b at delta=+1.5", 1.0, [&] {
    return Verdict{rp == std::set<std::size_t>{1}, "counts over X_b " + range_text(rp)};
  });

  criterion("AC6", "meeting points", 1.0, [] {
    SystemParams p;
    p.G = 204.0;
    const auto [lo, hi] = meeting_delta(p);
    double worst = 0.0;
    for (double d : {lo, hi}) {
      p.delta = d;
      const double xu = branch_displacement(p, Branch::Upper);
      const double xl = branch_displacement(p, Branch::Lower);
      worst = std::max(worst, std::abs(phi_matching(p, xu, 0) - phi_matching(p, xl, 0)));
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "delta = +-%.4f MHz, max |phi_upper - phi_lower| = %.3g rad", hi, worst);
    return Verdict{worst < 1e-6, buf};
  });

  criterion("AC7", "contour centres", 30.0, [] {
    SystemParams p;
    p.G = 1000.0;
    const GainSweep sweep{{Axis::Phi, -kPi / 2, kPi / 2, 201, Spacing::Linear},
                          {Axis::Delta, -1e6, 1e6, 201, Spacing::Linear},
                          0.0};
    const GainGrid g = gain_map(p, sweep);
    std::size_t col = 0;
    for (std::size_t j = 1; j < g.col_values.size(); ++j) {
      if (std::abs(g.col_values[j]) < std::abs(g.col_values[col])) col = j;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < g.row_values.size(); ++i) {
      if (g.at(i, col).margin > g.at(best, col).margin) best = i;
    }
    const double phi = g.row_values[best];
    const double a = std::atan(p.G * p.G / (p.kappa * p.gamma));
    double dist = INFINITY;
    for (double s : {a, -a}) {
      for (int k = -2; k <= 2; ++k) dist = std::min(dist, std::abs(phi - 0.5 * (s + k * kPi)));
    }
    const double cell = kPi / 200.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "argmax phi = %.6f rad, %.3g rad from nearest centre (cell %.4f)", phi, dist, cell);
    return Verdict{dist <= cell, buf};
  });

  criterion("AC8", "dynamics oracles", 60.0, [] {
    return all_of({cli::checks::linear_oracle(kSeed, 20), cli::checks::step_halving(kSeed, 10),
                   cli::checks::coherence(kSeed, 100)});
  });

  criterion("AC9", "deterministic verify report", 90.0, [] {
    const std::string a = run_verify("a");
    const std::string b = run_verify("b");
    return Verdict{!a.empty() && a == b, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different")};
  });

  std::printf("%d criterion line(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
