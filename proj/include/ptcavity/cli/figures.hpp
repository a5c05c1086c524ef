#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ptcavity/hysteresis.hpp"
#include "ptcavity/params.hpp"
#include "ptcavity/spectral_gain.hpp"

namespace ptcavity::cli {

struct BranchRow {
  double G = 0.0;
  std::optional<double> x_upper;  // empty when rho <= 1
  std::optional<double> x_lower;
  double rho = 0.0;
};

struct BranchSweep {
  std::vector<BranchRow> rows;
  double threshold_G = 0.0;
  double saddle_G = 0.0;
  /// Meeting detunings at the threshold coupling, and at the configured G if any.
  std::pair<double, double> meeting_at_threshold{};
  std::optional<std::pair<double, double>> meeting_at_G;
};

/// x_ss of both branches over a G axis. Rows are evaluated in parallel.
BranchSweep branch_sweep(const SystemParams& p, const AxisSpec& G_axis);

struct PhaseRow {
  double delta = 0.0;
  std::optional<double> phi_upper;
  std::optional<double> phi_lower;
};

struct PhaseMatch {
  std::vector<PhaseRow> rows;
  std::optional<std::pair<double, double>> meeting;
  /// Matched phase of each branch evaluated exactly at the meeting detunings.
  std::vector<std::pair<double, double>> phi_at_meeting;  // (upper, lower) per point
};

PhaseMatch phase_match(const SystemParams& p, const AxisSpec& delta_axis, int k);

struct CountScan {
  std::vector<double> X_b;
  std::vector<std::size_t> counts;
  std::size_t min_count = 0;
  std::size_t max_count = 0;
  double X_b_at_max = 0.0;  // first sample reaching max_count
};

struct HysteresisAtDelta {
  double delta = 0.0;
  std::vector<HysteresisCurve> curves;  // upper, lower
  CountScan scan;
  std::size_t fold_count() const;
};

/// Curves over X_a in [-X_a_max, X_a_max] and a count scan over a symmetric X_b
/// range that contains 0 and every fold interval. Throws BelowThreshold if rho <= 1.
HysteresisAtDelta hysteresis_at(const SystemParams& p, int k, double X_a_max,
                                std::size_t samples, std::size_t X_b_samples);

}  // namespace ptcavity::cli
