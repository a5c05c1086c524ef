#include "ptcavity/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ptcavity/error.hpp"

namespace ptcavity {

const char* to_string(Branch branch) noexcept {
  switch (branch) {
    case Branch::Zero: return "zero";
    case Branch::Upper: return "upper";
    case Branch::Lower: return "lower";
  }
  return "unknown";
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidParams, what);
}

// Relative tolerance for accepting a displacement as balance-consistent.
constexpr double kBalanceModulusTol = 1e-8;

}  // namespace

void SystemParams::validate() const {
  require(std::isfinite(kappa) && kappa > 0.0, "kappa must be > 0");
  require(std::isfinite(gamma) && gamma > 0.0, "gamma must be > 0");
  require(std::isfinite(omega_M) && omega_M > 0.0, "omega_M must be > 0");
  require(std::isfinite(beta) && beta > 0.0, "beta must be > 0");
  require(std::isfinite(Gamma_m) && Gamma_m >= 0.0, "Gamma_m must be >= 0");
  require(std::isfinite(G) && G >= 0.0, "G must be >= 0");
  require(std::isfinite(eta) && eta != 0.0, "eta must be nonzero");
  require(std::isfinite(delta), "delta must be finite");
  require(std::isfinite(phi), "phi must be finite");
  require(std::isfinite(g_single) && g_single >= 0.0, "g_single must be >= 0");
  if (Omega_abs && omega0_abs) {
    require(delta == *Omega_abs - *omega0_abs,
            "delta must equal Omega_abs - omega0_abs");
  }
}

double hopfield_G(double g_single, std::uint64_t N) {
  return std::sqrt(static_cast<double>(N)) * g_single;
}

double compute_rho(const SystemParams& p) {
  const double G2 = p.G * p.G;
  return (G2 / (p.kappa * p.kappa)) * (G2 / (p.gamma * p.gamma + p.delta * p.delta));
}

double threshold_G(const SystemParams& p) {
  return std::sqrt(p.kappa * std::hypot(p.gamma, p.delta));
}

double branch_displacement(const SystemParams& p, Branch branch) {
  if (branch == Branch::Zero) return 0.0;
  const double r = std::sqrt(std::max(compute_rho(p) - 1.0, 0.0));
  const double x = (p.kappa / p.eta) * r;
  return branch == Branch::Upper ? x : -x;
}

std::vector<SteadySolution> steady_states(const SystemParams& p, int k) {
  const double rho = compute_rho(p);
  std::vector<SteadySolution> out;
  out.push_back({Branch::Zero, 0.0, p.phi, rho, k});
  if (rho > 1.0) {
    for (Branch b : {Branch::Upper, Branch::Lower}) {
      const double x = branch_displacement(p, b);
      out.push_back({b, x, phi_matching(p, x, k), rho, k});
    }
  }
  return out;
}

double phi_matching(const SystemParams& p, double x_ss, int k) {
  // G^2 e^{2i phi} has to cancel every other term of the balance equation.
  const double ex = p.eta * x_ss;
  const std::complex<double> target(-(p.kappa * p.gamma + p.delta * ex),
                                    -(p.kappa * p.delta - p.gamma * ex));
  const double G2 = p.G * p.G;
  const double modulus = std::abs(target);
  if (!(std::abs(modulus - G2) <= kBalanceModulusTol * std::max(G2, modulus))) {
    throw Error(ErrorKind::BalanceInconsistent,
                "displacement " + std::to_string(x_ss) +
                    " cannot satisfy the balance equation at G=" + std::to_string(p.G));
  }
  return 0.5 * std::arg(target) + k * std::numbers::pi;
}

std::complex<double> balance_residual(const SystemParams& p, double x) {
  const double ex = p.eta * x;
  const std::complex<double> coupling = std::polar(p.G * p.G, 2.0 * p.phi);
  return std::complex<double>(p.kappa * p.gamma + p.delta * ex,
                              p.kappa * p.delta - p.gamma * ex) +
         coupling;
}

std::complex<double> degenerate_det(const SystemParams& p, double x) {
  using namespace std::complex_literals;
  const std::complex<double> cavity = p.kappa - 1i * (p.eta * x);
  const std::complex<double> atoms = 1i * p.delta + p.gamma;
  const std::complex<double> coupling = 1i * p.G * std::exp(1i * p.phi);
  // det [[cavity, coupling], [coupling, atoms]]
  return cavity * atoms - coupling * coupling;
}

double saddle_G(const SystemParams& p) {
  const double s = 3.0 * p.kappa * p.kappa * (p.gamma * p.gamma + p.delta * p.delta);
  return std::sqrt(std::sqrt(s));
}

std::pair<double, double> meeting_delta(const SystemParams& p) {
  const double G2 = p.G * p.G;
  const double radicand = (G2 / p.kappa) * (G2 / p.kappa) - p.gamma * p.gamma;
  if (radicand < 0.0) {
    throw Error(ErrorKind::NoMeetingPoint,
                "G=" + std::to_string(p.G) + " is below sqrt(kappa*gamma); no meeting point");
  }
  const double d = std::sqrt(radicand);
  return {-d, d};
}

double bogoliubov_drive(const SystemParams& p) {
  return p.G * std::sqrt(static_cast<double>(p.N));
}

}  // namespace ptcavity
