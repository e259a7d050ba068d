#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ergokit/qmath.hpp"

namespace ergokit {

/// Positive semidefinite, unit-trace Hermitian matrix with tensor-factor
/// structure. Validates on construction.
class DensityMatrix {
 public:
  DensityMatrix(Matrix m, std::vector<Eigen::Index> dims);

  /// Projector onto a normalized vector.
  static DensityMatrix pure(const Vector& psi, std::vector<Eigen::Index> dims);

  /// Hermitize, clip eigenvalues in [floor, 0) to zero and renormalize.
  /// Eigenvalues below `floor` raise PositivityError.
  static DensityMatrix sanitized(const Matrix& m, std::vector<Eigen::Index> dims,
                                 double floor = -1e-9);

  const Matrix& matrix() const { return mat_; }
  const std::vector<Eigen::Index>& dims() const { return dims_; }
  Eigen::Index dim() const { return mat_.rows(); }
  int factors() const { return static_cast<int>(dims_.size()); }

  /// Partial trace down to a single tensor factor.
  DensityMatrix marginal(int factor) const;
  /// Partial trace keeping the listed factors (original order).
  DensityMatrix keep(const std::vector<int>& factors) const;

  double purity() const { return (mat_ * mat_).trace().real(); }

 private:
  Matrix mat_;
  std::vector<Eigen::Index> dims_;
};

/// Hermitian observable, optionally with a bipartite local decomposition
/// h = a (x) 1 + 1 (x) b.
class Hamiltonian {
 public:
  explicit Hamiltonian(Matrix m);
  Hamiltonian(Matrix local_a, Matrix local_b);

  const Matrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  bool has_local_parts() const { return local_a_.has_value(); }
  const Matrix& local_a() const { return *local_a_; }
  const Matrix& local_b() const { return *local_b_; }

 private:
  Matrix mat_;
  std::optional<Matrix> local_a_, local_b_;
};

/// omega |e><e| on a single qubit, ground state at index 0.
Hamiltonian qubit_hamiltonian(double omega);

/// omega (n1 + n2) on two qubits, with local parts populated.
Hamiltonian two_qubit_hamiltonian(double omega);

/// Two-qubit state whose only nonzero entries sit on the main and
/// anti-diagonal, basis order |gg>, |ge>, |eg>, |ee>.
struct XState {
  double rho11 = 0, rho22 = 0, rho33 = 0, rho44 = 0;
  Complex rho14{0, 0}, rho23{0, 0};
};

DensityMatrix xstate_to_density(const XState& x);

/// Inverse temperature fitted to a diagonal qubit state; beta may be
/// negative (population inversion) or +-infinity (pure limits).
struct EffectiveTemperature {
  double beta = 0;
  double omega = 1;
};

/// Gibbs state exp(-beta h)/Z. Negative beta allowed; energies are
/// shifted before exponentiation so no overflow occurs.
DensityMatrix thermal_state(const Hamiltonian& h, double beta);

/// beta = (1/omega) ln(p_g/p_e) for a 2-dimensional diagonal state.
/// Throws NotDiagonalError when coherences exceed 1e-10.
EffectiveTemperature effective_beta(const DensityMatrix& rho_qubit, double omega);

/// Least-squares thermal fit of a state against a local Hamiltonian:
/// ln-populations regressed on energies. `residual` is the max entrywise
/// distance between the state and the fitted Gibbs state; `coherence`
/// the largest off-diagonal magnitude in the energy eigenbasis.
struct ThermalFit {
  double beta = 0;
  double residual = 0;
  double coherence = 0;
};

ThermalFit fit_thermal(const DensityMatrix& rho, const Hamiltonian& h_local);

/// Random two-qubit X-state with rho22 = rho33, which forces equal,
/// diagonal (hence thermal) marginals at a common effective beta with
/// beta * omega >= 0. Deterministic in the seed.
DensityMatrix locally_thermal_xstate_sampler(std::uint64_t seed, double omega = 1.0);

/// Ginibre construction G G^dag / tr(G G^dag) with G of shape dim x rank.
DensityMatrix random_density_matrix(Eigen::Index dim, Eigen::Index rank,
                                    std::uint64_t seed);

/// Haar-distributed unitary (QR of a Ginibre matrix, phases fixed).
Matrix random_unitary(Eigen::Index dim, std::uint64_t seed);

double von_neumann_entropy(const DensityMatrix& rho);
double bures_angle(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace ergokit
