#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "ptcavity/params.hpp"

namespace ptcavity {

enum class Branch { Zero, Upper, Lower };

const char* to_string(Branch branch) noexcept;

/// One admissible mirror equilibrium.
struct SteadySolution {
  Branch branch = Branch::Zero;
  double x_ss = 0.0;
  double phi0 = 0.0;  // for Zero: the configured phase, which is unconstrained there
  double rho = 0.0;
  int k = 0;
};

/// Collective Hopfield coupling sqrt(N) * g.
double hopfield_G(double g_single, std::uint64_t N);

/// Compound gain-loss ratio (G^2/kappa^2) * G^2/(gamma^2 + delta^2).
double compute_rho(const SystemParams& p);

/// Coupling at which rho reaches one for the given rates and detuning.
double threshold_G(const SystemParams& p);

/// Mirror displacement of a non-zero branch, +-(kappa/eta) sqrt(rho - 1).
/// The radicand is clamped at zero so the value is defined on the threshold.
double branch_displacement(const SystemParams& p, Branch branch);

/// Zero always; Upper and Lower in addition iff rho > 1 (strict).
std::vector<SteadySolution> steady_states(const SystemParams& p, int k);

/// Matching phase for a branch displacement. The returned angle satisfies the
/// complex balance equation exactly, so consecutive k differ by pi.
/// Throws BalanceInconsistent if |balance| cannot vanish for any phase.
double phi_matching(const SystemParams& p, double x_ss, int k);

/// kappa*gamma + delta*eta*x + G^2 e^{2i phi} + i(kappa*delta - gamma*eta*x).
std::complex<double> balance_residual(const SystemParams& p, double x);

/// Determinant of the steady-state matrix for (a, b):
/// (kappa - i eta x)(i delta + gamma) + G^2 e^{2i phi}.
std::complex<double> degenerate_det(const SystemParams& p, double x);

/// Inflection of x_ss(G): [3 kappa^2 (gamma^2 + delta^2)]^{1/4}.
double saddle_G(const SystemParams& p);

/// Detunings where rho == 1 at the configured G, returned as (-d, +d).
/// Throws NoMeetingPoint when G^4/kappa^2 < gamma^2.
std::pair<double, double> meeting_delta(const SystemParams& p);

/// Drive amplitude G*sqrt(N) of the frozen-atom comparison model.
double bogoliubov_drive(const SystemParams& p);

}  // namespace ptcavity
