#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ptcavity/dynamics.hpp"
#include "ptcavity/params.hpp"
#include "ptcavity/spectral_gain.hpp"

namespace ptcavity::cli {

enum class Format { Csv, Json, Svg, Ascii };

const char* to_string(Format f) noexcept;
std::vector<Format> parse_formats(const std::string& list);

struct SimulateConfig {
  std::string mode = "full";  // "full" or "driven"
  double dt = 0.0;            // <= 0: recommended step
  double T = 50.0;            // microseconds
  std::size_t stride = 10;
  ModeState initial{{1e-3, 0.0}, {0.0, 0.0}, 0.0, 0.0};
  /// "none" or "upper": start on the upper-branch equilibrium with phi matched.
  std::string start_at = "none";
};

struct HysteresisConfig {
  std::vector<double> deltas{0.0, -1.5, 1.5};
  double X_a_max = 4.0;
  std::size_t samples = 401;
  std::size_t X_b_samples = 2001;
};

struct RunConfig {
  std::string preset;
  SystemParams params;
  std::vector<AxisSpec> sweep;
  double x = 0.0;
  int k = 0;
  std::string out_dir = "out";
  std::vector<Format> formats{Format::Csv, Format::Json};
  std::uint64_t seed = 42;
  SimulateConfig simulate;
  HysteresisConfig hysteresis;

  bool wants(Format f) const;
};

/// Names: fig2, fig3, fig4a, fig4b, fig5, sim, verify. Throws Error(Config).
RunConfig preset_config(const std::string& name);

/// Overlays a JSON document onto cfg. Unknown keys are rejected.
void apply_json(RunConfig& cfg, const nlohmann::json& doc);

/// Preset first, then the file (if any). The file may name its own preset,
/// which then replaces the default one before the overlay.
RunConfig load_config(const std::optional<std::string>& path, const std::string& default_preset);

nlohmann::json to_json(const SystemParams& p);
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace ptcavity::cli
