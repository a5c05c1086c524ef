#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptcavity/contour.hpp"
#include "ptcavity/spectral_gain.hpp"

namespace ptcavity::cli {

/// First line of every CSV and text output.
inline constexpr const char* kUnitsLine =
    "# units: frequencies and rates in MHz (angular), angles in rad, times in us";

/// Shortest round-trippable form ("%.17g"); empty optional becomes an empty field.
std::string format_number(double v);
std::string format_number(const std::optional<double>& v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row);
  std::string str() const;

 private:
  static std::string quote(const std::string& field);

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes to "<path>.tmp" and renames over path. Creates parent directories.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;  // NaN y breaks the line
  std::string color = "#1f77b4";
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::vector<Series> series;
};

std::string svg_line_plot(const PlotSpec& spec);

/// NetGain cells shaded, zero contour drawn on top. Rows run up the page.
std::string svg_gain_map(const GainGrid& grid, const std::vector<Polyline>& contour);

/// Character-cell plot for terminals.
std::string ascii_plot(const PlotSpec& spec, int width = 72, int height = 22);

std::string ascii_gain_map(const GainGrid& grid, int max_width = 72, int max_height = 36);

}  // namespace ptcavity::cli
