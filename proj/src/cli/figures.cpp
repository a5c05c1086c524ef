#include "ptcavity/cli/figures.hpp"

#include <algorithm>
#include <cmath>

#include "ptcavity/core_model.hpp"
#include "ptcavity/error.hpp"

namespace ptcavity::cli {

BranchSweep branch_sweep(const SystemParams& p, const AxisSpec& G_axis) {
  if (G_axis.axis != Axis::G) throw Error(ErrorKind::InvalidGrid, "branch sweep needs a G axis");
  G_axis.validate();
  const std::vector<double> Gs = G_axis.values();
  BranchSweep out;
  out.rows.resize(Gs.size());
  const long n = static_cast<long>(Gs.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    SystemParams q = p;
    q.G = Gs[i];
    BranchRow& row = out.rows[i];
    row.G = q.G;
    row.rho = compute_rho(q);
    if (row.rho > 1.0) {
      row.x_upper = branch_displacement(q, Branch::Upper);
      row.x_lower = branch_displacement(q, Branch::Lower);
    }
  }
  out.threshold_G = threshold_G(p);
  out.saddle_G = saddle_G(p);
  SystemParams at = p;
  at.G = out.threshold_G;
  try {
    out.meeting_at_threshold = meeting_delta(at);
  } catch (const Error&) {
    out.meeting_at_threshold = {-std::abs(p.delta), std::abs(p.delta)};
  }
  try {
    out.meeting_at_G = meeting_delta(p);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoMeetingPoint) throw;
  }
  return out;
}

PhaseMatch phase_match(const SystemParams& p, const AxisSpec& delta_axis, int k) {
  if (delta_axis.axis != Axis::Delta) {
    throw Error(ErrorKind::InvalidGrid, "phase match needs a delta axis");
  }
  delta_axis.validate();
  const std::vector<double> ds = delta_axis.values();
  PhaseMatch out;
  out.rows.resize(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    SystemParams q = p;
    q.delta = ds[i];
    PhaseRow& row = out.rows[i];
    row.delta = q.delta;
    if (compute_rho(q) > 1.0) {
      row.phi_upper = phi_matching(q, branch_displacement(q, Branch::Upper), k);
      row.phi_lower = phi_matching(q, branch_displacement(q, Branch::Lower), k);
    }
  }
  try {
    out.meeting = meeting_delta(p);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoMeetingPoint) throw;
  }
  if (out.meeting) {
    for (double d : {out.meeting->first, out.meeting->second}) {
      SystemParams q = p;
      q.delta = d;
      out.phi_at_meeting.emplace_back(phi_matching(q, branch_displacement(q, Branch::Upper), k),
                                      phi_matching(q, branch_displacement(q, Branch::Lower), k));
    }
  }
  return out;
}

std::size_t HysteresisAtDelta::fold_count() const {
  return static_cast<std::size_t>(
      std::count_if(curves.begin(), curves.end(), [](const auto& c) { return c.fold.has_value(); }));
}

HysteresisAtDelta hysteresis_at(const SystemParams& p, int k, double X_a_max,
                                std::size_t samples, std::size_t X_b_samples) {
  if (!(X_a_max > 0.0) || X_b_samples < 2) {
    throw Error(ErrorKind::InvalidGrid, "hysteresis ranges must be positive with >= 2 samples");
  }
  HysteresisAtDelta out;
  out.delta = p.delta;
  for (Branch b : {Branch::Upper, Branch::Lower}) {
    out.curves.push_back(trace_curve(p, b, k, -X_a_max, X_a_max, samples));
  }

  double range = 0.0;
  for (const auto& c : out.curves) {
    if (c.fold) range = std::max(range, 2.0 * c.fold->second);
  }
  if (range == 0.0) {
    for (const auto& c : out.curves) range = std::max(range, std::abs(c.cubic(0.5 * X_a_max)));
  }
  if (range == 0.0) range = 1.0;

  // An odd sample count puts X_b = 0 on the grid.
  const std::size_t n = X_b_samples % 2 ? X_b_samples : X_b_samples + 1;
  const std::size_t mid = n / 2;
  CountScan& scan = out.scan;
  scan.X_b.resize(n);
  scan.counts.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double X_b = i == mid ? 0.0 : range * (static_cast<double>(i) - mid) / static_cast<double>(mid);
    scan.X_b[i] = X_b;
    scan.counts[i] = multistability_count(p, k, X_b).count();
  }
  const auto hi = std::max_element(scan.counts.begin(), scan.counts.end());
  scan.min_count = *std::min_element(scan.counts.begin(), scan.counts.end());
  scan.max_count = *hi;
  scan.X_b_at_max = scan.X_b[static_cast<std::size_t>(hi - scan.counts.begin())];
  return out;
}

}  // namespace ptcavity::cli
