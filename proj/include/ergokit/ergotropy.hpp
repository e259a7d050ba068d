#pragma once

#include "ergokit/states.hpp"

namespace ergokit {

/// Sorted spectral pairing used to build passive states: energies
/// ascending, populations descending, together with their eigenvectors.
struct SpectralData {
  RealVector energies;      // ascending
  Matrix energy_vectors;    // columns match energies
  RealVector populations;   // descending
  Matrix population_vectors;
};

SpectralData spectral_data(const DensityMatrix& rho, const Hamiltonian& h);

struct PassiveResult {
  DensityMatrix passive;
  Matrix unitary;  // maps rho to the passive state
};

/// Rearrange the spectrum of rho so larger populations occupy lower
/// energy levels. The returned unitary U satisfies U rho U^dag = passive;
/// eigenvector phases are fixed so the result is deterministic.
PassiveResult passive_state(const DensityMatrix& rho, const Hamiltonian& h);

/// Maximum work extractable by a cyclic unitary process,
/// tr{h (rho - P_rho)}. Cross-checked internally against the spectral
/// double-sum form.
double ergotropy(const DensityMatrix& rho, const Hamiltonian& h);

struct EqualEntropyThermal {
  DensityMatrix state;
  double beta;         // +inf when the entropy target needs the T -> 0 limit
  double entropy_gap;  // |S(state) - S(target)| actually achieved
};

/// Gibbs state of h with the same entropy as rho, located by bisection on
/// beta >= 0. Throws DegenerateHamiltonianError when h is proportional to
/// the identity.
EqualEntropyThermal equal_entropy_thermal(const DensityMatrix& rho,
                                          const Hamiltonian& h);

/// Extra work per copy unlocked by processing many copies collectively:
/// tr{(P_rho - P_rho_th) h} >= 0.
double bound_ergotropy(const DensityMatrix& rho, const Hamiltonian& h);

/// n (ergotropy + bound ergotropy).
double global_ergotropy(const DensityMatrix& rho, const Hamiltonian& h,
                        int n_copies);

struct PassivityDiagnostic {
  bool completely_passive;
  double ergotropy;
  double bound_ergotropy;
  double commutator_norm;  // max |[rho, h]| entrywise
};

/// True iff rho is a Gibbs state of h (no work extractable even from
/// arbitrarily many copies).
PassivityDiagnostic is_completely_passive(const DensityMatrix& rho,
                                          const Hamiltonian& h);

struct ErgotropyReport {
  double ergotropy;
  double bound_ergotropy;
  DensityMatrix passive_state;
  double equal_entropy_beta;
  Matrix optimal_unitary;
};

ErgotropyReport ergotropy_report(const DensityMatrix& rho, const Hamiltonian& h);

}  // namespace ergokit
