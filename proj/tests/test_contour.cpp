#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "ptcavity/contour.hpp"
#include "ptcavity/error.hpp"

using namespace ptcavity;
using doctest::Approx;

namespace {

std::vector<double> field(const AxisSpec& rows, const AxisSpec& cols, auto f) {
  const auto r = rows.values();
  const auto c = cols.values();
  std::vector<double> v;
  for (double y : r) {
    for (double x : c) v.push_back(f(y, x));
  }
  return v;
}

bool closed(const Polyline& l) {
  return l.size() > 2 && l.front().row == l.back().row && l.front().col == l.back().col;
}

}  // namespace

TEST_CASE("circle gives one closed loop on the circle") {
  const AxisSpec rows{Axis::G, -2.0, 2.0, 81, Spacing::Linear};
  const AxisSpec cols{Axis::Phi, -2.0, 2.0, 81, Spacing::Linear};
  const auto v = field(rows, cols, [](double y, double x) { return 1.0 - x * x - y * y; });
  const auto lines = zero_contour(v, rows, cols);
  REQUIRE(lines.size() == 1);
  CHECK(closed(lines[0]));
  CHECK(lines[0].size() > 50);
  for (const auto& pt : lines[0]) {
    CHECK(std::hypot(pt.row, pt.col) == Approx(1.0).epsilon(5e-3));
  }
}

TEST_CASE("straight line gives an open polyline") {
  const AxisSpec rows{Axis::G, 0.0, 1.0, 11, Spacing::Linear};
  const AxisSpec cols{Axis::Phi, 0.0, 1.0, 21, Spacing::Linear};
  const auto v = field(rows, cols, [](double y, double x) { return x - 0.33 + 0.0 * y; });
  const auto lines = zero_contour(v, rows, cols);
  REQUIRE(lines.size() == 1);
  CHECK_FALSE(closed(lines[0]));
  CHECK(lines[0].size() == 11);
  for (const auto& pt : lines[0]) CHECK(pt.col == Approx(0.33).epsilon(1e-12));
}

TEST_CASE("log axis crossings interpolate in log space") {
  const AxisSpec rows{Axis::G, 1.0, 100.0, 3, Spacing::Log};
  const AxisSpec cols{Axis::Phi, 0.0, 1.0, 2, Spacing::Linear};
  // index-linear field crossing halfway between rows 0 and 1
  const std::vector<double> v{1.0, 1.0, -1.0, -1.0, -3.0, -3.0};
  const auto lines = zero_contour(v, rows, cols);
  REQUIRE(lines.size() == 1);
  for (const auto& pt : lines[0]) CHECK(pt.row == Approx(std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("constant fields have no contour") {
  const AxisSpec rows{Axis::G, 0.0, 1.0, 5, Spacing::Linear};
  const AxisSpec cols{Axis::Phi, 0.0, 1.0, 5, Spacing::Linear};
  CHECK(zero_contour(std::vector<double>(25, 1.0), rows, cols).empty());
  CHECK(zero_contour(std::vector<double>(25, -1.0), rows, cols).empty());
  CHECK_THROWS_AS(zero_contour(std::vector<double>(24, 1.0), rows, cols), Error);
}

TEST_CASE("two blobs and repeatable order") {
  const AxisSpec rows{Axis::G, -3.0, 3.0, 61, Spacing::Linear};
  const AxisSpec cols{Axis::Phi, -3.0, 3.0, 61, Spacing::Linear};
  const auto v = field(rows, cols, [](double y, double x) {
    return std::max(0.5 - std::hypot(x - 1.5, y), 0.5 - std::hypot(x + 1.5, y));
  });
  const auto a = zero_contour(v, rows, cols);
  const auto b = zero_contour(v, rows, cols);
  REQUIRE(a.size() == 2);
  REQUIRE(b.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(closed(a[i]));
    REQUIRE(a[i].size() == b[i].size());
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      CHECK(a[i][j].row == b[i][j].row);
      CHECK(a[i][j].col == b[i][j].col);
    }
  }
}

TEST_CASE("margin contour bounds the net gain cells") {
  SystemParams p;
  p.G = 1000.0;
  const GainSweep sweep{{Axis::Phi, -1.5707963267948966, 1.5707963267948966, 101, Spacing::Linear},
                        {Axis::Delta, -1e6, 1e6, 101, Spacing::Linear},
                        0.0};
  const auto grid = gain_map(p, sweep);
  const auto lines = margin_contour(grid);
  REQUIRE_FALSE(lines.empty());
  double spread = 0.0;
  for (const auto& c : grid.samples) spread = std::max(spread, std::abs(c.margin));
  for (const auto& l : lines) {
    for (const auto& pt : l) {
      SystemParams q = p;
      q.phi = pt.row;
      q.delta = pt.col;
      CHECK(std::abs(gain_margin(q, 0.0)) < 0.02 * spread);
    }
  }
}
