#pragma once

#include <optional>

#include "ergokit/ergotropy.hpp"

namespace ergokit {

/// D(rho||sigma) = tr{rho ln rho - rho ln sigma}, natural log. Returns
/// +infinity when rho carries weight > 1e-8 outside sigma's support.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// I(A:B) = S(rho_A) + S(rho_B) - S(rho) for a two-factor state.
double mutual_information(const DensityMatrix& rho);

/// sum_i S(rho_{A_i}) - S(rho) over all tensor factors (k >= 2).
double multipartite_mutual_information(const DensityMatrix& rho);

/// chi = rho - rho_A (x) rho_B; Hermitian and traceless.
Matrix correlation_matrix(const DensityMatrix& rho);

struct CorrelationReport {
  double mutual_information = 0;
  double relative_entropy_passive_to_product = 0;
  std::optional<double> discord;  // filled on request, two qubits only
  std::optional<double> holevo;
  double beta = 0;
  // [I - D]/beta; absent when beta is too close to zero for the division.
  std::optional<double> ergotropy_via_identity;
  double ergotropy_direct = 0;
  double identity_residual = 0;  // |beta E - I + D|, always in nats
  bool locally_thermal = true;
  double beta_mismatch = 0;
  double thermal_residual = 0;
  std::string warning;
};

struct MainIdentityOptions {
  bool with_discord = false;
  double local_thermal_tol = 1e-8;
};

/// Decomposition of the ergotropy of a locally thermal bipartite state
/// into correlation terms: beta E = I(A:B) - D(P_rho || rho_A x rho_B).
/// Both sides are computed through independent code paths and the residual
/// is reported in nats (meaningful for any beta, including zero).
CorrelationReport main_identity(const DensityMatrix& rho, const Hamiltonian& h,
                                const MainIdentityOptions& opts = {});

/// For equal-entropy rho1, rho2 checks
/// beta tr{(rho1 - rho2) h} = D(rho1||rho_beta) - D(rho2||rho_beta);
/// returns the residual. Throws EntropyMismatchError when entropies differ
/// by more than 1e-8.
double equal_entropy_identity(const DensityMatrix& rho1,
                              const DensityMatrix& rho2, const Hamiltonian& h,
                              double beta);

struct LandauerSlack {
  double basic;  // I - beta E
  double tight;  // I - beta (E + E_b)
};

/// Slack in beta E <= I and its tighter multi-copy refinement.
LandauerSlack inverse_landauer_check(const DensityMatrix& rho,
                                     const Hamiltonian& h);

struct BoundIdentityResult {
  double residual_nats;  // |beta(E + E_b) - I + D(P_th || rho_A x rho_B)|
  bool applicable;       // false when beta ~ 0 (energy form undefined)
  double beta;
};

/// beta (E + E_b) = I(A:B) - D(P_rho_th || rho_A x rho_B).
BoundIdentityResult bound_identity(const DensityMatrix& rho,
                                   const Hamiltonian& h);

enum class MeasuredSide { A, B };

struct DiscordOptions {
  int grid = 64;         // coarse scan resolution per angle
  double tol = 1e-8;     // simplex convergence tolerance on the objective
  int max_iterations = 500;
};

struct DiscordResult {
  double discord;
  double holevo;
  double theta;  // optimal measurement direction, Bloch polar angle
  double phi;
};

/// Quantum discord of a two-qubit state from rank-1 projective
/// measurements on the chosen side: grid scan plus Nelder-Mead refinement.
/// Projective measurements give an upper bound on the discord.
DiscordResult discord(const DensityMatrix& rho, MeasuredSide side,
                      const DiscordOptions& opts = {});

/// For zero-ergotropy locally thermal states,
/// discord + holevo = D(P_rho || rho_A x rho_B); returns the residual.
double zero_ergotropy_condition(const DensityMatrix& rho, const Hamiltonian& h);

/// Ergotropy decomposition for arbitrary bipartite states at reference
/// inverse temperature beta:
/// beta E = I - D(P_rho||rho_beta) + <ln(rho_A x rho_B / rho_beta)>_chi
///          + D(rho_A x rho_B || rho_beta).
/// Returns the residual; throws SupportViolationError when a required
/// relative entropy diverges.
double general_state_identity(const DensityMatrix& rho, const Hamiltonian& h,
                              double beta);

/// Work advantage of bath-assisted (isothermal) extraction over the cyclic
/// unitary one, from free-energy differences: E_beta(rho) - E(rho).
double bath_assisted_gap(const DensityMatrix& rho, const Hamiltonian& h,
                         double beta);

}  // namespace ergokit
