#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

namespace ptcavity {

/// Physical parameters of the atom-cavity-mirror system.
///
/// Rates, couplings and detunings are angular frequencies in MHz. The mirror
/// displacement is measured in units where eta * x is again in MHz. The mirror
/// mass only ever enters through beta = eta^2 / (m * omega_M^2).
struct SystemParams {
  double kappa = 1.3;                   // cavity linewidth
  double gamma = 3.0;                   // atomic-mode relaxation
  double Gamma_m = 0.01;                // mirror damping
  double delta = 32000.0;               // atom-cavity detuning Omega - omega0
  double eta = std::sqrt(1.8) * 1.3;    // radiation-pressure coupling
  double G = 10.9;                      // collective coupling
  double phi = 0.0;                     // coupling phase, rad
  double g_single = 10.9;               // single-atom coupling
  std::uint64_t N = 1;                  // atom count
  double beta = 1.3;                    // mechanical response eta^2/(m omega_M^2)
  double omega_M = 1.0;                 // mirror frequency
  std::optional<double> Omega_abs;      // informational only
  std::optional<double> omega0_abs;     // informational only

  /// Throws Error(InvalidParams) when an invariant is violated.
  void validate() const;

  /// Coefficient eta/m of |a|^2 in the mirror equation, expressed through beta.
  /// Zero when eta == 0: the mirror is then decoupled from the cavity.
  double radiation_force() const noexcept {
    return eta == 0.0 ? 0.0 : beta * omega_M * omega_M / eta;
  }
};

}  // namespace ptcavity
