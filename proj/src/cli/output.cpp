#include "ptcavity/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "ptcavity/error.hpp"

namespace ptcavity::cli {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

void CsvTable::add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

std::string CsvTable::quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string q = "\"";
  for (char c : field) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string CsvTable::str() const {
  std::string out = std::string(kUnitsLine) + "\n";
  auto emit = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += quote(row[i]);
    }
    out += '\n';
  };
  emit(header_);
  for (const auto& r : rows_) emit(r);
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Config, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorKind::Config, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  double frac(double v) const { return (v - lo) / (hi - lo); }
};

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string svg_header(const std::string& title) {
  std::string s =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + px(kWidth) +
      "\" height=\"" + px(kHeight) + "\">\n";
  s += "<!-- units: frequencies and rates in MHz (angular), angles in rad, times in us -->\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + px(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
       esc(title) + "</text>\n";
  return s;
}

void svg_axes(std::string& s, const Range& xr, const Range& yr, bool log_x,
              const std::string& xl, const std::string& yl) {
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  s += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" + px(pw) + "\" height=\"" +
       px(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double f = i / 4.0;
    const double xv = xr.lo + f * (xr.hi - xr.lo);
    const double yv = yr.lo + f * (yr.hi - yr.lo);
    const double X = kLeft + f * pw;
    const double Y = kTop + ph - f * ph;
    s += "<text x=\"" + px(X) + "\" y=\"" + px(kTop + ph + 16) +
         "\" text-anchor=\"middle\" font-size=\"11\">" + tick_label(log_x ? std::pow(10.0, xv) : xv) +
         "</text>\n";
    s += "<text x=\"" + px(kLeft - 6) + "\" y=\"" + px(Y + 4) +
         "\" text-anchor=\"end\" font-size=\"11\">" + tick_label(yv) + "</text>\n";
  }
  s += "<text x=\"" + px(kLeft + pw / 2) + "\" y=\"" + px(kHeight - 16) +
       "\" text-anchor=\"middle\" font-size=\"12\">" + esc(xl) + "</text>\n";
  s += "<text x=\"16\" y=\"" + px(kTop + ph / 2) + "\" text-anchor=\"middle\" font-size=\"12\" "
       "transform=\"rotate(-90 16 " + px(kTop + ph / 2) + ")\">" + esc(yl) + "</text>\n";
}

}  // namespace

std::string svg_line_plot(const PlotSpec& spec) {
  Range xr, yr;
  auto xmap = [&](double x) { return spec.log_x ? (x > 0 ? std::log10(x) : NAN) : x; };
  for (const auto& s : spec.series) {
    for (const auto& [x, y] : s.points) {
      if (std::isfinite(y)) {
        xr.add(xmap(x));
        yr.add(y);
      }
    }
  }
  xr.finish();
  yr.finish();
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;

  std::string s = svg_header(spec.title);
  svg_axes(s, xr, yr, spec.log_x, spec.x_label, spec.y_label);
  double legend_y = kTop + 14;
  for (const auto& series : spec.series) {
    std::string d;
    bool pen = false;
    for (const auto& [x, y] : series.points) {
      const double X = xmap(x);
      if (!std::isfinite(y) || !std::isfinite(X)) {
        pen = false;
        continue;
      }
      d += (pen ? " L" : " M") + px(kLeft + xr.frac(X) * pw) + " " + px(kTop + ph - yr.frac(y) * ph);
      pen = true;
    }
    s += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + series.color + "\" stroke-width=\"1.5\"" +
         (series.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    s += "<text x=\"" + px(kLeft + pw - 8) + "\" y=\"" + px(legend_y) +
         "\" text-anchor=\"end\" font-size=\"11\" fill=\"" + series.color + "\">" + esc(series.name) +
         "</text>\n";
    legend_y += 14;
  }
  s += "</svg>\n";
  return s;
}

namespace {

double axis_fraction(const AxisSpec& a, double v) {
  if (a.spacing == Spacing::Log) return std::log(v / a.min) / std::log(a.max / a.min);
  return (v - a.min) / (a.max - a.min);
}

}  // namespace

std::string svg_gain_map(const GainGrid& grid, const std::vector<Polyline>& contour) {
  const auto& rows = grid.sweep.rows;
  const auto& cols = grid.sweep.cols;
  const std::size_t nr = grid.row_values.size();
  const std::size_t nc = grid.col_values.size();
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const double cw = pw / static_cast<double>(nc);
  const double ch = ph / static_cast<double>(nr);

  std::string s = svg_header(std::string("net-gain regions, ") + to_string(rows.axis) + " vs " +
                             to_string(cols.axis));
  // Shaded runs of NetGain cells, one rect per run.
  for (std::size_t i = 0; i < nr; ++i) {
    std::size_t j = 0;
    while (j < nc) {
      if (grid.at(i, j).classification != GainClass::NetGain) {
        ++j;
        continue;
      }
      const std::size_t start = j;
      while (j < nc && grid.at(i, j).classification == GainClass::NetGain) ++j;
      s += "<rect x=\"" + px(kLeft + start * cw) + "\" y=\"" + px(kTop + ph - (i + 1) * ch) +
           "\" width=\"" + px((j - start) * cw) + "\" height=\"" + px(ch) +
           "\" fill=\"#f4a261\" stroke=\"none\"/>\n";
    }
  }
  Range xr{cols.spacing == Spacing::Log ? std::log10(cols.min) : cols.min,
           cols.spacing == Spacing::Log ? std::log10(cols.max) : cols.max};
  Range yr{rows.spacing == Spacing::Log ? std::log10(rows.min) : rows.min,
           rows.spacing == Spacing::Log ? std::log10(rows.max) : rows.max};
  svg_axes(s, xr, yr, cols.spacing == Spacing::Log, to_string(cols.axis),
           std::string(to_string(rows.axis)) + (rows.spacing == Spacing::Log ? " (log10)" : ""));
  for (const auto& line : contour) {
    std::string d;
    for (std::size_t n = 0; n < line.size(); ++n) {
      // Cell centres sit half a cell in from the plot edge.
      const double fx = axis_fraction(cols, line[n].col) * (nc - 1) + 0.5;
      const double fy = axis_fraction(rows, line[n].row) * (nr - 1) + 0.5;
      d += (n ? " L" : " M") + px(kLeft + fx * cw) + " " + px(kTop + ph - fy * ch);
    }
    s += "<path d=\"" + d + "\" fill=\"none\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string ascii_plot(const PlotSpec& spec, int width, int height) {
  static const char marks[] = "*o+x#@";
  Range xr, yr;
  auto xmap = [&](double x) { return spec.log_x ? (x > 0 ? std::log10(x) : NAN) : x; };
  for (const auto& s : spec.series) {
    for (const auto& [x, y] : s.points) {
      if (std::isfinite(y)) {
        xr.add(xmap(x));
        yr.add(y);
      }
    }
  }
  xr.finish();
  yr.finish();
  std::vector<std::string> canvas(height, std::string(width, ' '));
  for (std::size_t n = 0; n < spec.series.size(); ++n) {
    for (const auto& [x, y] : spec.series[n].points) {
      const double X = xmap(x);
      if (!std::isfinite(y) || !std::isfinite(X)) continue;
      const int c = std::clamp(static_cast<int>(std::lround(xr.frac(X) * (width - 1))), 0, width - 1);
      const int r = std::clamp(static_cast<int>(std::lround((1.0 - yr.frac(y)) * (height - 1))), 0,
                               height - 1);
      canvas[r][c] = marks[n % (sizeof marks - 1)];
    }
  }
  std::ostringstream out;
  out << kUnitsLine << "\n" << spec.title << "\n";
  out << tick_label(yr.hi) << "\n";
  for (const auto& line : canvas) out << '|' << line << "|\n";
  out << tick_label(yr.lo) << "\n";
  out << tick_label(spec.log_x ? std::pow(10.0, xr.lo) : xr.lo) << " .. "
      << tick_label(spec.log_x ? std::pow(10.0, xr.hi) : xr.hi) << "  (" << spec.x_label << ")\n";
  for (std::size_t n = 0; n < spec.series.size(); ++n) {
    out << "  " << marks[n % (sizeof marks - 1)] << " " << spec.series[n].name << "\n";
  }
  return out.str();
}

std::string ascii_gain_map(const GainGrid& grid, int max_width, int max_height) {
  const std::size_t nr = grid.row_values.size();
  const std::size_t nc = grid.col_values.size();
  const std::size_t w = std::min<std::size_t>(nc, static_cast<std::size_t>(max_width));
  const std::size_t h = std::min<std::size_t>(nr, static_cast<std::size_t>(max_height));
  std::ostringstream out;
  out << kUnitsLine << "\n";
  out << "rows: " << to_string(grid.sweep.rows.axis) << " (top = max), cols: "
      << to_string(grid.sweep.cols.axis) << "; # NetGain, . NetLoss, = Balanced\n";
  for (std::size_t r = 0; r < h; ++r) {
    const std::size_t i = (nr - 1) - r * (nr - 1) / std::max<std::size_t>(h - 1, 1);
    for (std::size_t c = 0; c < w; ++c) {
      const std::size_t j = c * (nc - 1) / std::max<std::size_t>(w - 1, 1);
      const GainClass g = grid.at(i, j).classification;
      out << (g == GainClass::NetGain ? '#' : g == GainClass::NetLoss ? '.' : '=');
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace ptcavity::cli
