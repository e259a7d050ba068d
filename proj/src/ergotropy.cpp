#include "ergokit/ergotropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ergokit {

namespace {

// Multiply each column by a phase making its largest-magnitude entry
// real-positive (ties resolved by lowest index), so downstream unitaries
// are deterministic.
void fix_column_phases(Matrix& v) {
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    Eigen::Index imax = 0;
    double amax = -1;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const double a = std::abs(v(i, k));
      if (a > amax + 1e-15) {
        amax = a;
        imax = i;
      }
    }
    const Complex z = v(imax, k);
    if (std::abs(z) > 0) v.col(k) *= std::conj(z) / std::abs(z);
  }
}

double gibbs_entropy(const RealVector& energies, double beta) {
  const double ref = energies.minCoeff();
  double z = 0, mean_shifted = 0;
  for (Eigen::Index i = 0; i < energies.size(); ++i)
    z += std::exp(-beta * (energies(i) - ref));
  for (Eigen::Index i = 0; i < energies.size(); ++i) {
    const double e = energies(i) - ref;
    mean_shifted += e * std::exp(-beta * e) / z;
  }
  // S = ln Z + beta <E> in the shifted gauge.
  return std::log(z) + beta * mean_shifted;
}

}  // namespace

SpectralData spectral_data(const DensityMatrix& rho, const Hamiltonian& h) {
  if (rho.dim() != h.dim())
    throw DimensionMismatchError("spectral_data: state/Hamiltonian mismatch");
  HermitianEigen he = eigh(h.matrix());
  HermitianEigen re = eigh(rho.matrix());

  // Populations descending; ties keep the solver's (ascending-index) order
  // so degenerate spectra still give deterministic output.
  const Eigen::Index d = rho.dim();
  std::vector<Eigen::Index> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return re.eigenvalues(a) > re.eigenvalues(b);
                   });

  SpectralData out;
  out.energies = he.eigenvalues;
  out.energy_vectors = he.eigenvectors;
  out.populations.resize(d);
  out.population_vectors.resize(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    out.populations(k) = re.eigenvalues(order[k]);
    out.population_vectors.col(k) = re.eigenvectors.col(order[k]);
  }
  fix_column_phases(out.energy_vectors);
  fix_column_phases(out.population_vectors);
  return out;
}

PassiveResult passive_state(const DensityMatrix& rho, const Hamiltonian& h) {
  SpectralData sd = spectral_data(rho, h);
  Matrix p = sd.energy_vectors * sd.populations.asDiagonal() *
             sd.energy_vectors.adjoint();
  Matrix u = sd.energy_vectors * sd.population_vectors.adjoint();
  return {DensityMatrix(std::move(p), rho.dims()), std::move(u)};
}

double ergotropy(const DensityMatrix& rho, const Hamiltonian& h) {
  SpectralData sd = spectral_data(rho, h);
  const Eigen::Index d = rho.dim();

  const Matrix p = sd.energy_vectors * sd.populations.asDiagonal() *
                   sd.energy_vectors.adjoint();
  const double direct = (h.matrix() * (rho.matrix() - p)).trace().real();

  // Spectral double sum: sum_ij r_j eps_i (|<r_j|eps_i>|^2 - delta_ij).
  double spectral = 0;
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const Complex ov =
          sd.population_vectors.col(j).dot(sd.energy_vectors.col(i));
      const double overlap2 = std::norm(ov);
      spectral += sd.populations(j) * sd.energies(i) *
                  (overlap2 - (i == j ? 1.0 : 0.0));
    }
  }
  if (std::abs(direct - spectral) > 1e-10) {
    std::ostringstream os;
    os << "ergotropy: trace and spectral forms disagree by "
       << std::abs(direct - spectral);
    throw Error(os.str());
  }
  return direct;
}

EqualEntropyThermal equal_entropy_thermal(const DensityMatrix& rho,
                                          const Hamiltonian& h) {
  HermitianEigen he = eigh(h.matrix());
  const double spread = he.eigenvalues.maxCoeff() - he.eigenvalues.minCoeff();
  if (spread < 1e-12)
    throw DegenerateHamiltonianError(
        "equal_entropy_thermal: Hamiltonian proportional to identity, "
        "entropy is constant in beta");

  const double target = von_neumann_entropy(rho);
  const Eigen::Index d = rho.dim();
  if (target >= std::log(static_cast<double>(d)) - 1e-12) {
    DensityMatrix maxmix = thermal_state(h, 0.0);
    return {maxmix, 0.0, std::abs(von_neumann_entropy(maxmix) - target)};
  }
  if (target < 1e-12) {
    // Zero-temperature limit: uniform weight on the ground-degenerate levels.
    const double e0 = he.eigenvalues.minCoeff();
    RealVector w = RealVector::Zero(d);
    for (Eigen::Index i = 0; i < d; ++i)
      if (he.eigenvalues(i) - e0 <= 1e-12) w(i) = 1.0;
    w /= w.sum();
    DensityMatrix ground(
        he.eigenvectors * w.asDiagonal() * he.eigenvectors.adjoint(),
        rho.dims());
    return {ground, std::numeric_limits<double>::infinity(),
            std::abs(von_neumann_entropy(ground) - target)};
  }

  double lo = 0.0, hi = 64.0;
  while (gibbs_entropy(he.eigenvalues, hi) > target && hi < 1048576.0) hi *= 2;
  if (gibbs_entropy(he.eigenvalues, hi) > target) {
    // Degenerate ground space keeps the entropy above the target at any
    // temperature; report the limiting state and the gap.
    DensityMatrix limit = thermal_state(h, hi);
    return {limit, std::numeric_limits<double>::infinity(),
            std::abs(von_neumann_entropy(limit) - target)};
  }
  double beta = hi;
  for (int it = 0; it < 200; ++it) {
    beta = 0.5 * (lo + hi);
    const double s = gibbs_entropy(he.eigenvalues, beta);
    if (std::abs(s - target) <= 1e-12) break;
    if (s > target)
      lo = beta;
    else
      hi = beta;
  }
  DensityMatrix state = thermal_state(h, beta);
  return {state, beta, std::abs(von_neumann_entropy(state) - target)};
}

double bound_ergotropy(const DensityMatrix& rho, const Hamiltonian& h) {
  PassiveResult pr = passive_state(rho, h);
  EqualEntropyThermal eet = equal_entropy_thermal(pr.passive, h);
  return (h.matrix() * (pr.passive.matrix() - eet.state.matrix()))
      .trace()
      .real();
}

double global_ergotropy(const DensityMatrix& rho, const Hamiltonian& h,
                        int n_copies) {
  if (n_copies < 1)
    throw DomainError("global_ergotropy: need n_copies >= 1");
  return n_copies * (ergotropy(rho, h) + bound_ergotropy(rho, h));
}

PassivityDiagnostic is_completely_passive(const DensityMatrix& rho,
                                          const Hamiltonian& h) {
  PassivityDiagnostic d;
  d.commutator_norm =
      (rho.matrix() * h.matrix() - h.matrix() * rho.matrix())
          .cwiseAbs()
          .maxCoeff();
  d.ergotropy = ergotropy(rho, h);
  d.bound_ergotropy = bound_ergotropy(rho, h);
  d.completely_passive = d.commutator_norm <= 1e-9 &&
                         d.ergotropy <= 1e-9 && d.bound_ergotropy <= 1e-9;
  return d;
}

ErgotropyReport ergotropy_report(const DensityMatrix& rho, const Hamiltonian& h) {
  PassiveResult pr = passive_state(rho, h);
  EqualEntropyThermal eet = equal_entropy_thermal(pr.passive, h);
  const double e = ergotropy(rho, h);
  const double eb =
      (h.matrix() * (pr.passive.matrix() - eet.state.matrix())).trace().real();
  return {e, eb, pr.passive, eet.beta, pr.unitary};
}

}  // namespace ergokit
