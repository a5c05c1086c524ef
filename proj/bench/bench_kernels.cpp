// OpenMP kernels against their serial references (branch_sweep: one thread).
// Not part of ctest.
//   bench_kernels [repeats]
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "ptcavity/cli/figures.hpp"
#include "ptcavity/dynamics.hpp"
#include "ptcavity/spectral_gain.hpp"

using namespace ptcavity;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
  double best = INFINITY;
  for (int r = 0; r < repeats; ++r) {
    const double t0 = omp_get_wtime();
    f();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name, serial, parallel,
              serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  const int threads = omp_get_max_threads();
  std::printf("threads %d, best of %d\n", threads, repeats);

  {
    SystemParams p;
    p.G = 1000.0;
    const double h = std::numbers::pi / 2;
    const GainSweep sweep{{Axis::Phi, -h, h, 401, Spacing::Linear}, {Axis::Delta, -1e6, 1e6, 401, Spacing::Linear}, 0.0};
    GainGrid a, b;
    const double ts = best_of(repeats, [&] { a = gain_map_serial(p, sweep); });
    const double tp = best_of(repeats, [&] { b = gain_map(p, sweep); });
    bool same = a.samples.size() == b.samples.size();
    for (std::size_t i = 0; same && i < a.samples.size(); ++i) same = a.samples[i].margin == b.samples[i].margin;
    report("gain_map 401x401", ts, tp, same);
  }

  {
    SystemParams p;
    const AxisSpec G{Axis::G, 1.0, 1e5, 200001, Spacing::Log};
    cli::BranchSweep a, b;
    omp_set_num_threads(1);
    const double ts = best_of(repeats, [&] { a = cli::branch_sweep(p, G); });
    omp_set_num_threads(threads);
    const double tp = best_of(repeats, [&] { b = cli::branch_sweep(p, G); });
    bool same = a.rows.size() == b.rows.size();
    for (std::size_t i = 0; same && i < a.rows.size(); ++i) same = a.rows[i].x_upper == b.rows[i].x_upper;
    report("branch_sweep 200001", ts, tp, same);
  }

  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<EnsembleMember> members;
    for (int i = 0; i < 256; ++i) {
      SystemParams p;
      p.G = 4.0 * (1.0 + u(rng));
      p.delta = 8.0 * u(rng);
      p.phi = std::numbers::pi * u(rng);
      members.push_back({p, ModeState{std::polar(1e-9, 3.0 * u(rng)), {}, 0.0, 0.0}});
    }
    std::vector<SettleResult> a, b;
    const double ts = best_of(repeats, [&] { a = settle_ensemble_serial(members, 30.0); });
    const double tp = best_of(repeats, [&] { b = settle_ensemble(members, 30.0); });
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].time == b[i].time && a[i].state.a == b[i].state.a;
    report("settle_ensemble 256", ts, tp, same);
  }
  return 0;
}
