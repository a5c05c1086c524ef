#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace ptcavity::cli {

/// Outcome of one property check. Errors are recorded already divided by the
/// check's natural scale, so `tolerance` is dimensionless.
struct CheckResult {
  std::string name;
  std::string scale;  // what errors are measured relative to
  double tolerance = 0.0;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_error = 0.0;

  void record(double error);
  void record_bool(bool ok);
  bool passed() const { return cases > 0 && failures == 0; }
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  bool passed() const;
};

// Individual checks, also driven directly by the acceptance binary.
namespace checks {

CheckResult balance_residual(std::uint64_t seed, std::size_t draws);
CheckResult det_identity(std::uint64_t seed, std::size_t draws);
CheckResult rho_homogeneity(std::uint64_t seed, std::size_t draws);
CheckResult threshold_exactness(std::uint64_t seed, std::size_t draws);
CheckResult derived_oracles(std::uint64_t seed, std::size_t draws);
CheckResult branch_antisymmetry(std::uint64_t seed, std::size_t draws);
CheckResult phi_family(std::uint64_t seed, std::size_t draws);
CheckResult non_hermitian_exclusion(std::uint64_t seed, std::size_t draws);
CheckResult gamma_independence(std::uint64_t seed, std::size_t draws);

CheckResult sign_equivalence(std::uint64_t seed, std::size_t draws);
CheckResult discriminant_identity(std::uint64_t seed, std::size_t draws);
CheckResult vieta(std::uint64_t seed, std::size_t draws);
CheckResult pi_periodicity(std::uint64_t seed, std::size_t draws);
CheckResult steady_equality(std::uint64_t seed, std::size_t draws);
CheckResult theta_sign(std::uint64_t seed, std::size_t draws);
CheckResult branch_root_sign(std::uint64_t seed, std::size_t draws);
CheckResult grid_pointwise(std::uint64_t seed);

CheckResult inversion_consistency(std::uint64_t seed, std::size_t draws);
CheckResult fold_vs_brute(std::uint64_t seed, std::size_t draws);
CheckResult odd_symmetry(std::uint64_t seed, std::size_t draws);
CheckResult count_sequence(std::uint64_t seed, std::size_t draws);
CheckResult curve_identity(std::uint64_t seed, std::size_t draws);
CheckResult delta_asymmetry();

CheckResult fixed_point(std::uint64_t seed, std::size_t draws);
CheckResult linear_oracle(std::uint64_t seed, std::size_t draws);
CheckResult step_halving(std::uint64_t seed, std::size_t draws);
CheckResult coherence(std::uint64_t seed, std::size_t draws);
CheckResult settled_gamma_independence(std::uint64_t seed, std::size_t draws);
CheckResult driven_fixed_point(std::uint64_t seed, std::size_t draws);

}  // namespace checks

std::vector<SuiteResult> run_suites(std::uint64_t seed);

/// Deterministic report: seed, suites with per-check counts and tolerances,
/// totals and an overall flag. No timings or host details.
nlohmann::json verification_report(std::uint64_t seed);

}  // namespace ptcavity::cli
