#include "ptcavity/contour.hpp"

#include <array>
#include <cmath>
#include <map>
#include <set>

#include "ptcavity/error.hpp"

namespace ptcavity {

namespace {

double axis_coordinate(const AxisSpec& axis, double frac_index) {
  const double t = frac_index / static_cast<double>(axis.count - 1);
  if (axis.spacing == Spacing::Log) {
    const double lo = std::log(axis.min);
    const double hi = std::log(axis.max);
    return std::exp(lo + (hi - lo) * t);
  }
  return axis.min + (axis.max - axis.min) * t;
}

class Marcher {
 public:
  Marcher(const std::vector<double>& values, const AxisSpec& rows, const AxisSpec& cols)
      : v_(values), rows_(rows), cols_(cols), nr_(rows.count), nc_(cols.count) {}

  std::vector<Polyline> run() {
    for (std::size_t i = 0; i + 1 < nr_; ++i) {
      for (std::size_t j = 0; j + 1 < nc_; ++j) cell(i, j);
    }
    return stitch();
  }

 private:
  using Key = std::size_t;

  double val(std::size_t i, std::size_t j) const { return v_[i * nc_ + j]; }
  bool inside(double v) const { return v >= 0.0; }
  Key horizontal(std::size_t i, std::size_t j) const { return 2 * (i * nc_ + j); }
  Key vertical(std::size_t i, std::size_t j) const { return 2 * (i * nc_ + j) + 1; }

  ContourPoint point(Key key) const {
    const std::size_t idx = key / 2;
    const std::size_t i = idx / nc_;
    const std::size_t j = idx % nc_;
    const bool vert = key % 2 == 1;
    const double v0 = val(i, j);
    const double v1 = vert ? val(i + 1, j) : val(i, j + 1);
    const double t = v0 / (v0 - v1);
    const double fi = static_cast<double>(i) + (vert ? t : 0.0);
    const double fj = static_cast<double>(j) + (vert ? 0.0 : t);
    return {axis_coordinate(rows_, fi), axis_coordinate(cols_, fj)};
  }

  void link(Key a, Key b) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }

  void cell(std::size_t i, std::size_t j) {
    // Corners counter-clockwise from (i, j); edge e_m joins corner m and m+1.
    const std::array<double, 4> c{val(i, j), val(i, j + 1), val(i + 1, j + 1), val(i + 1, j)};
    const std::array<Key, 4> e{horizontal(i, j), vertical(i, j + 1), horizontal(i + 1, j),
                               vertical(i, j)};
    std::array<bool, 4> in{};
    int n_in = 0;
    for (int m = 0; m < 4; ++m) n_in += (in[m] = inside(c[m]));
    if (n_in == 0 || n_in == 4) return;

    const bool saddle = in[0] == in[2] && in[1] == in[3] && in[0] != in[1];
    if (saddle) {
      const bool centre = inside(0.25 * (c[0] + c[1] + c[2] + c[3]));
      // Cut off the corners that disagree with the centre.
      for (int m = 0; m < 4; ++m) {
        if (in[m] != centre) link(e[(m + 3) % 4], e[m]);
      }
      return;
    }
    std::array<Key, 2> crossing{};
    int n = 0;
    for (int m = 0; m < 4; ++m) {
      if (in[m] != in[(m + 1) % 4]) crossing[n++] = e[m];
    }
    link(crossing[0], crossing[1]);
  }

  Polyline walk(Key start, std::set<Key>& seen) const {
    Polyline line;
    Key prev = start;
    Key cur = start;
    bool first = true;
    while (true) {
      line.push_back(point(cur));
      seen.insert(cur);
      const auto& nb = adj_.at(cur);
      bool moved = false;
      for (Key n : nb) {
        if ((!first && n == prev) || seen.count(n)) continue;
        prev = cur;
        cur = n;
        moved = true;
        break;
      }
      first = false;
      if (!moved) {
        // Closed loop: repeat the starting point.
        for (Key n : nb) {
          if (n == start && line.size() > 2) line.push_back(point(start));
        }
        return line;
      }
    }
  }

  std::vector<Polyline> stitch() const {
    std::vector<Polyline> out;
    std::set<Key> seen;
    for (const auto& [key, nb] : adj_) {
      if (nb.size() == 1 && !seen.count(key)) out.push_back(walk(key, seen));
    }
    for (const auto& [key, nb] : adj_) {
      if (!seen.count(key)) out.push_back(walk(key, seen));
    }
    return out;
  }

  const std::vector<double>& v_;
  const AxisSpec& rows_;
  const AxisSpec& cols_;
  std::size_t nr_;
  std::size_t nc_;
  std::map<Key, std::vector<Key>> adj_;
};

}  // namespace

std::vector<Polyline> zero_contour(const std::vector<double>& values, const AxisSpec& rows,
                                   const AxisSpec& cols) {
  rows.validate();
  cols.validate();
  if (values.size() != rows.count * cols.count) {
    throw Error(ErrorKind::InvalidGrid, "field size does not match the axes");
  }
  return Marcher(values, rows, cols).run();
}

std::vector<Polyline> margin_contour(const GainGrid& grid) {
  std::vector<double> margin;
  margin.reserve(grid.samples.size());
  for (const auto& s : grid.samples) margin.push_back(s.margin);
  return zero_contour(margin, grid.sweep.rows, grid.sweep.cols);
}

}  // namespace ptcavity
