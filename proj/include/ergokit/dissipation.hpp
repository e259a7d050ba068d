#pragma once

#include "ergokit/states.hpp"

namespace ergokit {

/// Two-qubit collective-bath parameters. gamma is the symmetric matrix of
/// spontaneous decay rates; nbar the mean photon number at the environment
/// temperature.
struct DissipationParams {
  double omega = 1.0;
  double f = 0.1;        // dipole-dipole coupling
  double beta_e = 1.0;   // environment inverse temperature, > 0
  double gamma11 = 1.0, gamma22 = 1.0, gamma12 = 1.0;
  double nbar = 0.0;     // derived from beta_e and omega

  /// Closely packed dipoles: gamma12 = gamma (dark singlet decouples).
  static DissipationParams collective(double omega, double gamma, double f,
                                      double beta_e);
  /// Well separated dipoles: gamma12 = 0, steady state is the Gibbs state.
  static DissipationParams independent(double omega, double gamma, double f,
                                       double beta_e);
  /// Largest rate entering the stiffness bound for the integrator.
  double rate_scale() const;
};

DissipationParams validate(DissipationParams p);

/// Action of the Lindblad generator: -i[(H0 + Hd), rho] + D-(rho) + D+(rho).
/// Traceless, Hermiticity-preserving.
Matrix liouvillian_apply(const Matrix& rho, const DissipationParams& p);

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  const DensityMatrix& final_state() const { return states.back(); }
};

/// Fixed-step RK4 integration of the master equation. Every stored point is
/// re-validated (hermitized, eigenvalues clipped at zero); an eigenvalue
/// below -1e-9 aborts with StepTooLargeError.
Trajectory evolve(const DensityMatrix& rho0, const DissipationParams& p,
                  double t_final, double dt, int store_stride = 1);

/// Integrate in blocks of 10/gamma until trace distance between successive
/// block endpoints drops below 1e-10 (convergence oracle for tests).
DensityMatrix evolve_to_convergence(const DensityMatrix& rho0,
                                    const DissipationParams& p, double dt,
                                    double max_time = 0);

struct SteadyStateParams {
  double c;       // conserved initial-state parameter, in [0, 1]
  double beta_e;  // environment inverse temperature, > 0
  double omega = 1.0;
};

/// Analytic steady state of the collective limit: a singlet fraction
/// (1 - c) plus a Gibbs ladder on the triplet subspace. X-shaped with a
/// vanishing outer coherence; marginals are equal and diagonal.
DensityMatrix steady_state(const SteadyStateParams& s);

/// Triplet weight <gg|rho|gg> + <ee|rho|ee> + <psi+|rho|psi+> of an initial
/// state; conserved by the collective dynamics.
double c_parameter(const DensityMatrix& rho0);

/// c value of a thermal initial state at the environment temperature; the
/// steady state there is the Gibbs state, so ergotropy and mutual
/// information both vanish.
double thermal_c(double beta_e, double omega);

/// Local inverse temperature of the steady-state marginals as a function
/// of (c, beta_e).
double local_beta_formula(double c, double beta_e, double omega);

// Two-qubit basis vectors, ordering |gg>, |ge>, |eg>, |ee>.
Vector ket_gg();
Vector ket_ee();
Vector ket_psi_plus();
Vector ket_psi_minus();

/// omega (n1 + n2) as a plain matrix (the model's self-Hamiltonian).
Matrix collective_h0(double omega);

}  // namespace ergokit
