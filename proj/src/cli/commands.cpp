#include "ptcavity/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ptcavity/cli/config.hpp"
#include "ptcavity/cli/figures.hpp"
#include "ptcavity/cli/output.hpp"
#include "ptcavity/cli/verify.hpp"
#include "ptcavity/contour.hpp"
#include "ptcavity/core_model.hpp"
#include "ptcavity/dynamics.hpp"
#include "ptcavity/error.hpp"
#include "ptcavity/hysteresis.hpp"
#include "ptcavity/spectral_gain.hpp"

namespace ptcavity::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kUnits = "frequencies and rates in MHz (angular), angles in rad, times in us";

struct Options {
  std::optional<std::string> config;
  std::optional<std::string> preset;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::vector<double> deltas;
  std::optional<double> x;
  std::optional<int> k;
};

RunConfig resolve(const Options& o, const std::string& default_preset) {
  RunConfig cfg = o.preset && !o.config ? preset_config(*o.preset)
                                        : load_config(o.config, o.preset.value_or(default_preset));
  if (o.format) cfg.formats = parse_formats(*o.format);
  if (o.seed) cfg.seed = *o.seed;
  if (o.x) cfg.x = *o.x;
  if (o.k) cfg.k = *o.k;
  if (o.out) {
    cfg.out_dir = *o.out;
  } else if (const char* env = std::getenv("PTCAVITY_OUT_DIR"); env && *env) {
    cfg.out_dir = env;
  }
  return cfg;
}

/// Writes files and remembers their names for the final report line.
class Writer {
 public:
  explicit Writer(fs::path dir) : dir_(std::move(dir)) {}

  void put(const std::string& name, const std::string& content) {
    write_atomic(dir_ / name, content);
    written_.push_back(name);
  }
  void put_json(const std::string& name, const json& j) { put(name, j.dump(2) + "\n"); }
  const std::vector<std::string>& written() const { return written_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<std::string> written_;
};

json pair_json(const std::pair<double, double>& p) { return json::array({p.first, p.second}); }

const char* axis_column(Axis a) {
  switch (a) {
    case Axis::Delta: return "delta_MHz";
    case Axis::G: return "G_MHz";
    case Axis::Phi: return "phi_rad";
  }
  return "axis";
}

std::string delta_tag(double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", d);
  return buf;
}

const AxisSpec& require_axis(const RunConfig& cfg, Axis a, const char* cmd) {
  for (const auto& s : cfg.sweep) {
    if (s.axis == a) return s;
  }
  throw Error(ErrorKind::Config, std::string(cmd) + " needs a sweep over " + to_string(a));
}

// branch-sweep -------------------------------------------------------------------

json cmd_branch_sweep(const RunConfig& cfg, Writer& w) {
  cfg.params.validate();
  const BranchSweep r = branch_sweep(cfg.params, require_axis(cfg, Axis::G, "branch-sweep"));
  if (cfg.wants(Format::Csv)) {
    CsvTable t({"G_MHz", "x_upper", "x_lower", "rho"});
    for (const auto& row : r.rows) {
      t.add_row({format_number(row.G), format_number(row.x_upper), format_number(row.x_lower),
                 format_number(row.rho)});
    }
    w.put("branch_sweep.csv", t.str());
  }
  if (cfg.wants(Format::Svg) || cfg.wants(Format::Ascii)) {
    PlotSpec plot{"steady-state mirror displacement", "G (MHz)", "x_ss", true, {}};
    Series up{"upper", {}, "#d62728"}, lo{"lower", {}, "#1f77b4"}, zero{"zero", {}, "#555555", true};
    for (const auto& row : r.rows) {
      up.points.emplace_back(row.G, row.x_upper.value_or(NAN));
      lo.points.emplace_back(row.G, row.x_lower.value_or(NAN));
      zero.points.emplace_back(row.G, 0.0);
    }
    plot.series = {up, lo, zero};
    if (cfg.wants(Format::Svg)) w.put("branch_sweep.svg", svg_line_plot(plot));
    if (cfg.wants(Format::Ascii)) w.put("branch_sweep.txt", ascii_plot(plot));
  }
  json summary = {{"units", kUnits},
                  {"threshold_G", r.threshold_G},
                  {"saddle_G", r.saddle_G},
                  {"meeting_delta_at_threshold", pair_json(r.meeting_at_threshold)},
                  {"meeting_delta_at_G",
                   r.meeting_at_G ? pair_json(*r.meeting_at_G) : json(nullptr)},
                  {"config", to_json(cfg)}};
  w.put_json("branch_sweep_summary.json", summary);
  return summary;
}

// phase-match --------------------------------------------------------------------

json cmd_phase_match(const RunConfig& cfg, Writer& w) {
  cfg.params.validate();
  const PhaseMatch r = phase_match(cfg.params, require_axis(cfg, Axis::Delta, "phase-match"), cfg.k);
  if (cfg.wants(Format::Csv)) {
    CsvTable t({"delta_MHz", "phi0_upper", "phi0_lower"});
    for (const auto& row : r.rows) {
      t.add_row({format_number(row.delta), format_number(row.phi_upper),
                 format_number(row.phi_lower)});
    }
    w.put("phase_match.csv", t.str());
  }
  if (cfg.wants(Format::Svg) || cfg.wants(Format::Ascii)) {
    PlotSpec plot{"matching phase", "delta (MHz)", "phi0 (rad)", false, {}};
    Series up{"upper", {}, "#d62728"}, lo{"lower", {}, "#1f77b4"};
    for (const auto& row : r.rows) {
      up.points.emplace_back(row.delta, row.phi_upper.value_or(NAN));
      lo.points.emplace_back(row.delta, row.phi_lower.value_or(NAN));
    }
    plot.series = {up, lo};
    if (cfg.wants(Format::Svg)) w.put("phase_match.svg", svg_line_plot(plot));
    if (cfg.wants(Format::Ascii)) w.put("phase_match.txt", ascii_plot(plot));
  }
  json meeting = json::array();
  if (r.meeting) {
    const double ds[2] = {r.meeting->first, r.meeting->second};
    for (std::size_t i = 0; i < r.phi_at_meeting.size(); ++i) {
      meeting.push_back({{"delta", ds[i]},
                         {"phi0_upper", r.phi_at_meeting[i].first},
                         {"phi0_lower", r.phi_at_meeting[i].second}});
    }
  }
  json summary = {{"units", kUnits}, {"k", cfg.k}, {"meeting_points", meeting},
                  {"config", to_json(cfg)}};
  w.put_json("phase_match_summary.json", summary);
  return summary;
}

// gain-map -----------------------------------------------------------------------

json cmd_gain_map(const RunConfig& cfg, Writer& w) {
  cfg.params.validate();
  if (cfg.sweep.size() != 2) throw Error(ErrorKind::Config, "gain-map needs exactly two sweep axes");
  const GainSweep sweep{cfg.sweep[0], cfg.sweep[1], cfg.x};
  const GainGrid grid = gain_map(cfg.params, sweep);
  const auto contour = margin_contour(grid);
  const std::size_t nr = grid.row_values.size();
  const std::size_t nc = grid.col_values.size();

  if (cfg.wants(Format::Csv)) {
    CsvTable t({axis_column(sweep.rows.axis), axis_column(sweep.cols.axis), "margin_MHz4",
                "classification"});
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nc; ++j) {
        const GainSample& s = grid.at(i, j);
        t.add_row({format_number(grid.row_values[i]), format_number(grid.col_values[j]),
                   format_number(s.margin), to_string(s.classification)});
      }
    }
    w.put("gain_map.csv", t.str());
  }
  json lines = json::array();
  for (const auto& line : contour) {
    json pts = json::array();
    for (const auto& p : line) pts.push_back(json::array({p.row, p.col}));
    lines.push_back(pts);
  }
  w.put_json("gain_map_contour.json",
             {{"units", kUnits},
              {"level", 0.0},
              {"point_order", json::array({to_string(sweep.rows.axis), to_string(sweep.cols.axis)})},
              {"polylines", lines}});
  if (cfg.wants(Format::Svg)) w.put("gain_map.svg", svg_gain_map(grid, contour));
  if (cfg.wants(Format::Ascii)) w.put("gain_map.txt", ascii_gain_map(grid));

  std::size_t gain = 0, balanced = 0;
  double row_sum = 0.0, col_sum = 0.0;
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) {
      const GainClass c = grid.at(i, j).classification;
      if (c == GainClass::Balanced) ++balanced;
      if (c != GainClass::NetGain) continue;
      ++gain;
      row_sum += grid.row_values[i];
      col_sum += grid.col_values[j];
    }
  }
  json summary = {{"units", kUnits},
                  {"rows", to_string(sweep.rows.axis)},
                  {"cols", to_string(sweep.cols.axis)},
                  {"x", cfg.x},
                  {"cells", nr * nc},
                  {"netgain_cells", gain},
                  {"balanced_cells", balanced},
                  {"netgain_centroid", gain ? json::array({row_sum / gain, col_sum / gain})
                                            : json(nullptr)},
                  {"contour_polylines", contour.size()},
                  {"config", to_json(cfg)}};
  w.put_json("gain_map_summary.json", summary);
  return summary;
}

// hysteresis ---------------------------------------------------------------------

json cmd_hysteresis(const RunConfig& cfg, Writer& w) {
  cfg.params.validate();
  const HysteresisConfig& h = cfg.hysteresis;
  json per_delta = json::array();
  for (double delta : h.deltas) {
    SystemParams p = cfg.params;
    p.delta = delta;
    const HysteresisAtDelta r = hysteresis_at(p, cfg.k, h.X_a_max, h.samples, h.X_b_samples);
    const std::string tag = delta_tag(delta);
    json curves = json::array();
    PlotSpec plot{"quadrature map at delta = " + tag + " MHz", "X_a", "X_b", false, {}};
    for (const HysteresisCurve& c : r.curves) {
      const std::string branch = to_string(c.branch);
      if (cfg.wants(Format::Csv)) {
        CsvTable t({"X_a", "X_b"});
        for (const auto& [a, b] : c.samples) t.add_row({format_number(a), format_number(b)});
        w.put("hysteresis_" + branch + "_delta_" + tag + ".csv", t.str());
      }
      Series s{branch, {}, c.branch == Branch::Upper ? "#d62728" : "#1f77b4"};
      // plotted with the input quadrature X_b on the horizontal axis
      for (const auto& [a, b] : c.samples) s.points.emplace_back(b, a);
      plot.series.push_back(s);
      json fold = nullptr;
      if (c.fold) {
        const double X_star = c.cubic.turning_point();
        fold = {{"X_b_low", c.fold->first},
                {"X_b_high", c.fold->second},
                {"X_a_turning", json::array({-X_star, X_star})}};
      }
      curves.push_back({{"branch", branch},
                        {"k", c.k},
                        {"phi0", c.phi0},
                        {"c3", c.cubic.c3},
                        {"c1", c.cubic.c1},
                        {"fold", fold}});
    }
    plot.x_label = "X_b";
    plot.y_label = "X_a";
    if (cfg.wants(Format::Svg)) w.put("hysteresis_delta_" + tag + ".svg", svg_line_plot(plot));
    if (cfg.wants(Format::Ascii)) w.put("hysteresis_delta_" + tag + ".txt", ascii_plot(plot));
    if (cfg.wants(Format::Csv)) {
      CsvTable t({"X_b", "count"});
      for (std::size_t i = 0; i < r.scan.X_b.size(); ++i) {
        t.add_row({format_number(r.scan.X_b[i]), std::to_string(r.scan.counts[i])});
      }
      w.put("hysteresis_counts_delta_" + tag + ".csv", t.str());
    }
    per_delta.push_back({{"delta", delta},
                         {"folds", r.fold_count()},
                         {"curves", curves},
                         {"count_min", r.scan.min_count},
                         {"count_max", r.scan.max_count},
                         {"X_b_at_count_max", r.scan.X_b_at_max}});
  }
  json summary = {{"units", kUnits},
                  {"phase_convention", "common phase of a and b fixed to zero"},
                  {"beta", cfg.params.beta},
                  {"G", cfg.params.G},
                  {"k", cfg.k},
                  {"deltas", per_delta},
                  {"config", to_json(cfg)}};
  w.put_json("hysteresis_summary.json", summary);
  return summary;
}

// simulate -----------------------------------------------------------------------

json cmd_simulate(const RunConfig& cfg, Writer& w) {
  SystemParams p = cfg.params;
  p.validate();
  const SimulateConfig& sc = cfg.simulate;
  ModeState s0 = sc.initial;
  if (sc.start_at == "upper") {
    const auto sols = steady_states(p, cfg.k);
    if (sols.size() < 3) throw Error(ErrorKind::BelowThreshold, "start_at=upper needs rho > 1");
    const SteadySolution& up = sols[1];
    p.phi = up.phi0;
    s0 = ModeState{};
    s0.x = up.x_ss;
    s0.a = std::sqrt(p.eta * up.x_ss / p.beta);
    s0.b = b_from_a(p, s0.a);
  }
  const bool driven = sc.mode == "driven";
  const double dt = sc.dt > 0.0 ? sc.dt : recommended_dt(p, s0);
  const Trajectory tr = driven ? driven_mode(p, s0, dt, sc.T, sc.stride)
                               : integrate(p, s0, dt, sc.T, sc.stride);
  if (cfg.wants(Format::Csv)) {
    CsvTable t({"t_us", "re_a", "im_a", "re_b", "im_b", "x", "v"});
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      const ModeState& s = tr.states[i];
      t.add_row({format_number(tr.times[i]), format_number(s.a.real()), format_number(s.a.imag()),
                 format_number(s.b.real()), format_number(s.b.imag()), format_number(s.x),
                 format_number(s.v)});
    }
    w.put("trajectory.csv", t.str());
  }
  if (cfg.wants(Format::Svg) || cfg.wants(Format::Ascii)) {
    PlotSpec plot{"mode amplitudes", "t (us)", "amplitude", false, {}};
    Series a{"|a|", {}, "#d62728"}, b{"|b|", {}, "#1f77b4"}, x{"x", {}, "#2ca02c"};
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      a.points.emplace_back(tr.times[i], std::abs(tr.states[i].a));
      b.points.emplace_back(tr.times[i], std::abs(tr.states[i].b));
      x.points.emplace_back(tr.times[i], tr.states[i].x);
    }
    plot.series = {a, b, x};
    if (cfg.wants(Format::Svg)) w.put("trajectory.svg", svg_line_plot(plot));
    if (cfg.wants(Format::Ascii)) w.put("trajectory.txt", ascii_plot(plot));
  }
  const GainSample g = gain_sample(p, s0.x);
  json meta = {{"units", kUnits},
               {"mode", sc.mode},
               {"dt", tr.dt},
               {"T", sc.T},
               {"stride", tr.stride},
               {"steps", tr.steps},
               {"outcome", to_string(tr.outcome)},
               {"thresholds",
                {{"diverged_relative_norm", Thresholds::diverged},
                 {"decayed_relative_norm", Thresholds::decayed},
                 {"settled_change_per_period", Thresholds::settled}}},
               {"classification", driven ? json(nullptr) : json(to_string(g.classification))},
               {"max_root_real", driven ? json(nullptr) : json(max_root_real(p, s0.x))},
               {"rho", compute_rho(p)},
               {"phi", p.phi},
               {"config", to_json(cfg)}};
  w.put_json("trajectory_meta.json", meta);
  return meta;
}

// verify -------------------------------------------------------------------------

json cmd_verify(const RunConfig& cfg, Writer& w) {
  json report = verification_report(cfg.seed);
  w.put_json("verify_report.json", report);
  return {{"passed", report["passed"]}, {"totals", report["totals"]}, {"seed", cfg.seed}};
}

using Handler = json (*)(const RunConfig&, Writer&);

struct Command {
  const char* name;
  const char* help;
  const char* preset;
  Handler run;
};

const Command kCommands[] = {
    {"branch-sweep", "steady-state branches over G", "fig2", cmd_branch_sweep},
    {"phase-match", "matching phase of both branches over delta", "fig3", cmd_phase_match},
    {"gain-map", "net gain/loss classification over two axes", "fig4a", cmd_gain_map},
    {"hysteresis", "quadrature cubics, folds and root counts", "fig5", cmd_hysteresis},
    {"simulate", "integrate the equations of motion", "sim", cmd_simulate},
    {"verify", "run the seeded property suites", "verify", cmd_verify},
};

int exit_for(ErrorKind k) {
  return k == ErrorKind::NonFiniteState || k == ErrorKind::DegenerateDiscriminant ? kNumericalError
                                                                                  : kConfigError;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gain-loss steady states, spectra, hysteresis and dynamics of an atom-cavity-mirror system",
               "ptcavity"};
  app.require_subcommand(1);
  Options opt;
  std::map<std::string, CLI::App*> subs;
  for (const Command& c : kCommands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", opt.config, "JSON config file");
    sub->add_option("--preset", opt.preset, std::string("named preset (default ") + c.preset + ")");
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--format", opt.format, "comma list of csv,json,svg,ascii");
    sub->add_option("--seed", opt.seed, "seed for randomized suites");
    sub->add_option("--delta", opt.deltas, "detuning in MHz; repeatable for hysteresis");
    sub->add_option("--x", opt.x, "mirror coordinate used by gain-map");
    sub->add_option("--k", opt.k, "period index of the matching phase");
    subs[c.name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  for (const Command& c : kCommands) {
    if (!subs[c.name]->parsed()) continue;
    try {
      RunConfig cfg = resolve(opt, c.preset);
      if (!opt.deltas.empty()) {
        if (std::string(c.name) == "hysteresis") {
          cfg.hysteresis.deltas = opt.deltas;
        } else if (opt.deltas.size() == 1) {
          cfg.params.delta = opt.deltas.front();
        } else {
          throw Error(ErrorKind::Config, "--delta may be repeated only for hysteresis");
        }
      }
      Writer w(cfg.out_dir);
      json summary = c.run(cfg, w);
      out << summary.dump(2) << "\n";
      out << "wrote " << w.written().size() << " file(s) to " << w.dir().string() << "\n";
      if (std::string(c.name) == "verify" && !summary["passed"].get<bool>()) return kVerifyFailed;
      return kOk;
    } catch (const Error& e) {
      err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
      return exit_for(e.kind());
    } catch (const fs::filesystem_error& e) {
      err << "error (io): " << e.what() << "\n";
      return kConfigError;
    }
  }
  return kConfigError;
}

}  // namespace ptcavity::cli
