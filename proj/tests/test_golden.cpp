#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "ptcavity/cli/commands.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kRel = 1e-9;

const fs::path kGolden = PTCAVITY_GOLDEN_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path produce(const std::string& preset, const std::string& cmd, const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() /
                       ("ptcavity_golden_" + preset + "_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  const std::string out = dir.string();
  const char* argv[] = {"ptcavity", cmd.c_str(), "--preset", preset.c_str(), "--format", "csv,json", "--out", out.c_str()};
  std::ostringstream o, e;
  REQUIRE(ptcavity::cli::run_cli(8, argv, o, e) == 0);
  return dir;
}

bool parse_double(const std::string& s, double& v) {
  if (s.empty()) return false;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

bool close(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= kRel * std::max(std::abs(a), std::abs(b));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

void compare_csv(const std::string& name, const std::string& want, const std::string& got) {
  const auto wl = split(want, '\n');
  const auto gl = split(got, '\n');
  REQUIRE_MESSAGE(wl.size() == gl.size(), name);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < wl.size(); ++i) {
    const auto wf = split(wl[i], ',');
    const auto gf = split(gl[i], ',');
    if (wf.size() != gf.size()) {
      ++bad;
      continue;
    }
    for (std::size_t j = 0; j < wf.size(); ++j) {
      double a, b;
      if (parse_double(wf[j], a) && parse_double(gf[j], b)) {
        bad += !close(a, b);
      } else {
        bad += wf[j] != gf[j];
      }
    }
  }
  CHECK_MESSAGE(bad == 0, name);
}

bool same_json(const json& a, const json& b) {
  if (a.is_number() && b.is_number()) return close(a.get<double>(), b.get<double>());
  if (a.type() != b.type()) return false;
  if (a.is_object()) {
    if (a.size() != b.size()) return false;
    for (const auto& [k, v] : a.items()) {
      if (!b.contains(k) || !same_json(v, b[k])) return false;
    }
    return true;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!same_json(a[i], b[i])) return false;
    }
    return true;
  }
  return a == b;
}

void check_preset(const std::string& preset, const std::string& cmd) {
  const fs::path a = produce(preset, cmd, "a");
  const fs::path b = produce(preset, cmd, "b");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(kGolden / preset)) files.push_back(e.path().filename());
  std::sort(files.begin(), files.end());
  REQUIRE_FALSE(files.empty());
  std::size_t produced = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(a)) ++produced;
  CHECK(produced == files.size());
  for (const auto& f : files) {
    const std::string want = slurp(kGolden / preset / f);
    const std::string got = slurp(a / f);
    CHECK_MESSAGE(got == slurp(b / f), f.string());
    if (f.extension() == ".json") {
      CHECK_MESSAGE(same_json(json::parse(want), json::parse(got)), f.string());
    } else {
      compare_csv(f.string(), want, got);
    }
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

}  // namespace

TEST_CASE("fig2 branch sweep") { check_preset("fig2", "branch-sweep"); }
TEST_CASE("fig3 phase match") { check_preset("fig3", "phase-match"); }
TEST_CASE("fig4a gain map") { check_preset("fig4a", "gain-map"); }
TEST_CASE("fig4b gain map") { check_preset("fig4b", "gain-map"); }
TEST_CASE("fig5 hysteresis") { check_preset("fig5", "hysteresis"); }
