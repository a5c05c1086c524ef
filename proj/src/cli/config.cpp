#include "ptcavity/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ptcavity/error.hpp"

namespace ptcavity::cli {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorKind::Config, what); }

// Default parameter set: G spans N = 1 .. 1e7 atoms at g = 10.9 MHz.
constexpr double kG_min = 10.9;
const double kG_max = 10.9 * std::sqrt(1e7);

AxisSpec axis(Axis a, double lo, double hi, std::size_t n, Spacing s = Spacing::Linear) {
  return {a, lo, hi, n, s};
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) config_error("'" + key + "' must be a number");
  return j.get<double>();
}

std::complex<double> complex_value(const json& j, const std::string& key) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  config_error("'" + key + "' must be a number or [re, im]");
}

void apply_params(SystemParams& p, const json& j) {
  if (!j.is_object()) config_error("'params' must be an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "kappa") p.kappa = number(v, key);
    else if (key == "gamma") p.gamma = number(v, key);
    else if (key == "Gamma_m") p.Gamma_m = number(v, key);
    else if (key == "delta") p.delta = number(v, key);
    else if (key == "eta") p.eta = number(v, key);
    else if (key == "G") p.G = number(v, key);
    else if (key == "phi") p.phi = number(v, key);
    else if (key == "g_single") p.g_single = number(v, key);
    else if (key == "beta") p.beta = number(v, key);
    else if (key == "omega_M") p.omega_M = number(v, key);
    else if (key == "Omega_abs") p.Omega_abs = number(v, key);
    else if (key == "omega0_abs") p.omega0_abs = number(v, key);
    else if (key == "N") {
      if (!v.is_number_unsigned()) config_error("'N' must be a nonnegative integer");
      p.N = v.get<std::uint64_t>();
    } else {
      config_error("unknown parameter '" + key + "'");
    }
  }
}

AxisSpec parse_axis(const json& j) {
  if (!j.is_object()) config_error("sweep entries must be objects");
  AxisSpec a;
  bool have_axis = false;
  for (const auto& [key, v] : j.items()) {
    if (key == "axis") {
      if (!v.is_string()) config_error("'axis' must be a string");
      try {
        a.axis = axis_from_string(v.get<std::string>().c_str());
      } catch (const Error& e) {
        config_error(e.what());
      }
      have_axis = true;
    } else if (key == "min") {
      a.min = number(v, key);
    } else if (key == "max") {
      a.max = number(v, key);
    } else if (key == "count") {
      if (!v.is_number_unsigned()) config_error("'count' must be a nonnegative integer");
      a.count = v.get<std::size_t>();
    } else if (key == "spacing") {
      const auto s = v.is_string() ? v.get<std::string>() : std::string();
      if (s == "linear") a.spacing = Spacing::Linear;
      else if (s == "log") a.spacing = Spacing::Log;
      else config_error("'spacing' must be \"linear\" or \"log\"");
    } else {
      config_error("unknown sweep key '" + key + "'");
    }
  }
  if (!have_axis) config_error("sweep entry is missing 'axis'");
  try {
    a.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
  return a;
}

void apply_simulate(SimulateConfig& s, const json& j) {
  if (!j.is_object()) config_error("'simulate' must be an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "mode") {
      s.mode = v.is_string() ? v.get<std::string>() : "";
      if (s.mode != "full" && s.mode != "driven") config_error("'mode' must be full or driven");
    } else if (key == "dt") {
      s.dt = number(v, key);
    } else if (key == "T") {
      s.T = number(v, key);
    } else if (key == "stride") {
      if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) config_error("'stride' must be >= 1");
      s.stride = v.get<std::size_t>();
    } else if (key == "start_at") {
      s.start_at = v.is_string() ? v.get<std::string>() : "";
      if (s.start_at != "none" && s.start_at != "upper") config_error("'start_at' must be none or upper");
    } else if (key == "initial") {
      if (!v.is_object()) config_error("'initial' must be an object");
      for (const auto& [ik, iv] : v.items()) {
        if (ik == "a") s.initial.a = complex_value(iv, ik);
        else if (ik == "b") s.initial.b = complex_value(iv, ik);
        else if (ik == "x") s.initial.x = number(iv, ik);
        else if (ik == "v") s.initial.v = number(iv, ik);
        else config_error("unknown initial-state key '" + ik + "'");
      }
    } else {
      config_error("unknown simulate key '" + key + "'");
    }
  }
}

void apply_hysteresis(HysteresisConfig& h, const json& j) {
  if (!j.is_object()) config_error("'hysteresis' must be an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "deltas") {
      if (!v.is_array() || v.empty()) config_error("'deltas' must be a non-empty array");
      h.deltas.clear();
      for (const auto& d : v) h.deltas.push_back(number(d, key));
    } else if (key == "X_a_max") {
      h.X_a_max = number(v, key);
      if (!(h.X_a_max > 0.0)) config_error("'X_a_max' must be > 0");
    } else if (key == "samples" || key == "X_b_samples") {
      if (!v.is_number_unsigned() || v.get<std::size_t>() < 2) config_error("'" + key + "' must be >= 2");
      (key == "samples" ? h.samples : h.X_b_samples) = v.get<std::size_t>();
    } else {
      config_error("unknown hysteresis key '" + key + "'");
    }
  }
}

}  // namespace

const char* to_string(Format f) noexcept {
  switch (f) {
    case Format::Csv: return "csv";
    case Format::Json: return "json";
    case Format::Svg: return "svg";
    case Format::Ascii: return "ascii";
  }
  return "unknown";
}

std::vector<Format> parse_formats(const std::string& list) {
  std::vector<Format> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "csv") out.push_back(Format::Csv);
    else if (item == "json") out.push_back(Format::Json);
    else if (item == "svg") out.push_back(Format::Svg);
    else if (item == "ascii") out.push_back(Format::Ascii);
    else config_error("unknown output format '" + item + "'");
  }
  if (out.empty()) config_error("empty format list");
  return out;
}

bool RunConfig::wants(Format f) const {
  for (Format g : formats) {
    if (g == f) return true;
  }
  return false;
}

RunConfig preset_config(const std::string& name) {
  RunConfig cfg;
  cfg.preset = name;
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (name == "fig2") {
    cfg.sweep = {axis(Axis::G, kG_min, kG_max, 400, Spacing::Log)};
  } else if (name == "fig3") {
    cfg.params.G = 204.0;
    cfg.sweep = {axis(Axis::Delta, -40000.0, 40000.0, 801)};
  } else if (name == "fig4a") {
    cfg.params.delta = 0.0;
    cfg.sweep = {axis(Axis::G, kG_min, kG_max, 201, Spacing::Log),
                 axis(Axis::Phi, -half_pi, half_pi, 201)};
  } else if (name == "fig4b") {
    cfg.params.G = 1000.0;
    cfg.sweep = {axis(Axis::Phi, -half_pi, half_pi, 201),
                 axis(Axis::Delta, -1.0e6, 1.0e6, 201)};
  } else if (name == "fig5") {
    cfg.params.G = 345.0;
    cfg.params.delta = 0.0;
  } else if (name == "sim") {
    cfg.params.delta = 2.0;
    cfg.params.G = 2.0;
    cfg.params.phi = 0.3;
  } else if (name == "verify") {
    // suites draw their own parameters from the seed
  } else {
    config_error("unknown preset '" + name + "'");
  }
  return cfg;
}

void apply_json(RunConfig& cfg, const json& doc) {
  if (!doc.is_object()) config_error("config must be a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "preset") {
      continue;  // handled by load_config
    } else if (key == "params") {
      apply_params(cfg.params, v);
    } else if (key == "sweep") {
      if (!v.is_array()) config_error("'sweep' must be an array");
      cfg.sweep.clear();
      for (const auto& a : v) cfg.sweep.push_back(parse_axis(a));
    } else if (key == "x") {
      cfg.x = number(v, key);
    } else if (key == "k") {
      if (!v.is_number_integer()) config_error("'k' must be an integer");
      cfg.k = v.get<int>();
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) config_error("'seed' must be a nonnegative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "output") {
      if (!v.is_object()) config_error("'output' must be an object");
      for (const auto& [ok, ov] : v.items()) {
        if (ok == "dir" && ov.is_string()) {
          cfg.out_dir = ov.get<std::string>();
        } else if (ok == "formats" && ov.is_array()) {
          std::string joined;
          for (const auto& f : ov) {
            if (!f.is_string()) config_error("formats must be strings");
            joined += (joined.empty() ? "" : ",") + f.get<std::string>();
          }
          cfg.formats = parse_formats(joined);
        } else {
          config_error("bad output key '" + ok + "'");
        }
      }
    } else if (key == "simulate") {
      apply_simulate(cfg.simulate, v);
    } else if (key == "hysteresis") {
      apply_hysteresis(cfg.hysteresis, v);
    } else {
      config_error("unknown config key '" + key + "'");
    }
  }
}

RunConfig load_config(const std::optional<std::string>& path, const std::string& default_preset) {
  if (!path) return preset_config(default_preset);
  std::ifstream in(*path);
  if (!in) config_error("cannot open config file " + *path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    config_error(std::string("invalid JSON in ") + *path + ": " + e.what());
  }
  std::string preset = default_preset;
  if (doc.is_object() && doc.contains("preset")) {
    if (!doc["preset"].is_string()) config_error("'preset' must be a string");
    preset = doc["preset"].get<std::string>();
  }
  RunConfig cfg = preset_config(preset);
  apply_json(cfg, doc);
  return cfg;
}

json to_json(const SystemParams& p) {
  json j = {{"kappa", p.kappa},   {"gamma", p.gamma},       {"Gamma_m", p.Gamma_m},
            {"delta", p.delta},   {"eta", p.eta},           {"G", p.G},
            {"phi", p.phi},       {"g_single", p.g_single}, {"N", p.N},
            {"beta", p.beta},     {"omega_M", p.omega_M}};
  if (p.Omega_abs) j["Omega_abs"] = *p.Omega_abs;
  if (p.omega0_abs) j["omega0_abs"] = *p.omega0_abs;
  return j;
}

json to_json(const RunConfig& cfg) {
  json sweep = json::array();
  for (const auto& a : cfg.sweep) {
    sweep.push_back({{"axis", to_string(a.axis)},
                     {"min", a.min},
                     {"max", a.max},
                     {"count", a.count},
                     {"spacing", a.spacing == Spacing::Log ? "log" : "linear"}});
  }
  return {{"preset", cfg.preset}, {"params", to_json(cfg.params)}, {"sweep", sweep},
          {"x", cfg.x},           {"k", cfg.k},                    {"seed", cfg.seed}};
}

}  // namespace ptcavity::cli
