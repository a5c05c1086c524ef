#pragma once

#include <cstddef>
#include <vector>

#include "ptcavity/spectral_gain.hpp"

namespace ptcavity {

struct ContourPoint {
  double row = 0.0;  // coordinate on the row axis
  double col = 0.0;  // coordinate on the column axis
};

using Polyline = std::vector<ContourPoint>;

/// Zero level set of a row-major field by marching squares. Vertices with
/// value >= 0 count as inside. Saddle cells are split by the cell-centre mean.
/// Crossings are interpolated in index space and mapped through each axis, so
/// log axes get log-linear interpolation. Output order is deterministic.
std::vector<Polyline> zero_contour(const std::vector<double>& values, const AxisSpec& rows,
                                   const AxisSpec& cols);

/// Zero contour of the gain margin of a sweep.
std::vector<Polyline> margin_contour(const GainGrid& grid);

}  // namespace ptcavity
