#include "ergokit/states.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace ergokit {

namespace {

// Deterministic uniform/normal draws independent of the standard library's
// distribution implementations, so a fixed seed gives byte-identical states
// on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // in [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  Complex complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace

DensityMatrix::DensityMatrix(Matrix m, std::vector<Eigen::Index> dims)
    : mat_(std::move(m)), dims_(std::move(dims)) {
  if (dims_.empty()) dims_ = {mat_.rows()};
  Eigen::Index total = 1;
  for (Eigen::Index d : dims_) total *= d;
  if (total != mat_.rows() || mat_.rows() != mat_.cols()) {
    std::ostringstream os;
    os << "DensityMatrix: dims product " << total << " vs matrix "
       << mat_.rows() << "x" << mat_.cols();
    throw DimensionMismatchError(os.str());
  }
  const double herm = hermiticity_error(mat_);
  if (herm > 1e-10) {
    std::ostringstream os;
    os << "DensityMatrix: not Hermitian, max |m - m^dag| = " << herm;
    throw NotHermitianError(os.str());
  }
  const double tr = mat_.trace().real();
  if (std::abs(tr - 1.0) > 1e-10 || std::abs(mat_.trace().imag()) > 1e-10) {
    std::ostringstream os;
    os << "DensityMatrix: trace = " << mat_.trace() << ", expected 1";
    throw PositivityError(os.str());
  }
  HermitianEigen e = eigh(0.5 * (mat_ + mat_.adjoint()));
  if (e.eigenvalues(0) < -1e-10) {
    std::ostringstream os;
    os << "DensityMatrix: minimum eigenvalue " << e.eigenvalues(0);
    throw PositivityError(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const Vector& psi,
                                  std::vector<Eigen::Index> dims) {
  const double n = psi.norm();
  if (n < 1e-14) throw PositivityError("DensityMatrix::pure: zero vector");
  Vector v = psi / n;
  return DensityMatrix(v * v.adjoint(), std::move(dims));
}

DensityMatrix DensityMatrix::sanitized(const Matrix& m,
                                       std::vector<Eigen::Index> dims,
                                       double floor) {
  Matrix h = 0.5 * (m + m.adjoint());
  HermitianEigen e = eigh(h);
  if (e.eigenvalues(0) < floor) {
    std::ostringstream os;
    os << "DensityMatrix::sanitized: eigenvalue " << e.eigenvalues(0)
       << " below floor " << floor;
    throw PositivityError(os.str());
  }
  RealVector clipped = e.eigenvalues.cwiseMax(0.0);
  const double total = clipped.sum();
  if (total < 1e-14)
    throw PositivityError("DensityMatrix::sanitized: zero trace");
  clipped /= total;
  return DensityMatrix(
      e.eigenvectors * clipped.asDiagonal() * e.eigenvectors.adjoint(),
      std::move(dims));
}

DensityMatrix DensityMatrix::marginal(int factor) const { return keep({factor}); }

DensityMatrix DensityMatrix::keep(const std::vector<int>& factors) const {
  Matrix reduced = partial_trace(mat_, dims_, factors);
  std::vector<Eigen::Index> kept_dims;
  for (int f = 0; f < static_cast<int>(dims_.size()); ++f)
    for (int k : factors)
      if (k == f) kept_dims.push_back(dims_[f]);
  return DensityMatrix(std::move(reduced), std::move(kept_dims));
}

Hamiltonian::Hamiltonian(Matrix m) : mat_(std::move(m)) {
  const double herm = hermiticity_error(mat_);
  if (herm > 1e-10) {
    std::ostringstream os;
    os << "Hamiltonian: not Hermitian, deviation " << herm;
    throw NotHermitianError(os.str());
  }
}

Hamiltonian::Hamiltonian(Matrix local_a, Matrix local_b)
    : Hamiltonian(tensor(local_a, Matrix::Identity(local_b.rows(), local_b.cols())) +
                  tensor(Matrix::Identity(local_a.rows(), local_a.cols()), local_b)) {
  if (hermiticity_error(local_a) > 1e-10 || hermiticity_error(local_b) > 1e-10)
    throw NotHermitianError("Hamiltonian: local part not Hermitian");
  local_a_ = std::move(local_a);
  local_b_ = std::move(local_b);
}

Hamiltonian qubit_hamiltonian(double omega) {
  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = omega;
  return Hamiltonian(h);
}

Hamiltonian two_qubit_hamiltonian(double omega) {
  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = omega;
  return Hamiltonian(h, h);
}

DensityMatrix xstate_to_density(const XState& x) {
  const double pops[4] = {x.rho11, x.rho22, x.rho33, x.rho44};
  for (double p : pops)
    if (p < -1e-12) throw PositivityError("XState: negative population");
  const double sum = x.rho11 + x.rho22 + x.rho33 + x.rho44;
  if (std::abs(sum - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "XState: populations sum to " << sum;
    throw PositivityError(os.str());
  }
  if (std::norm(x.rho14) > x.rho11 * x.rho44 + 1e-12)
    throw PositivityError("XState: |rho14|^2 > rho11 rho44");
  if (std::norm(x.rho23) > x.rho22 * x.rho33 + 1e-12)
    throw PositivityError("XState: |rho23|^2 > rho22 rho33");
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = x.rho11;
  m(1, 1) = x.rho22;
  m(2, 2) = x.rho33;
  m(3, 3) = x.rho44;
  m(0, 3) = x.rho14;
  m(3, 0) = std::conj(x.rho14);
  m(1, 2) = x.rho23;
  m(2, 1) = std::conj(x.rho23);
  return DensityMatrix(std::move(m), {2, 2});
}

DensityMatrix thermal_state(const Hamiltonian& h, double beta) {
  if (!std::isfinite(beta))
    throw DomainError("thermal_state: beta must be finite");
  HermitianEigen e = eigh(h.matrix());
  // Shift by the extremal level on the relevant side so the largest weight
  // is exactly 1 and nothing overflows.
  const double ref =
      beta >= 0 ? e.eigenvalues.minCoeff() : e.eigenvalues.maxCoeff();
  RealVector w(e.eigenvalues.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    w(i) = std::exp(-beta * (e.eigenvalues(i) - ref));
  w /= w.sum();
  std::vector<Eigen::Index> dims;
  if (h.has_local_parts())
    dims = {h.local_a().rows(), h.local_b().rows()};
  else
    dims = {h.dim()};
  return DensityMatrix(
      e.eigenvectors * w.asDiagonal() * e.eigenvectors.adjoint(), dims);
}

EffectiveTemperature effective_beta(const DensityMatrix& rho_qubit, double omega) {
  if (rho_qubit.dim() != 2)
    throw DimensionMismatchError("effective_beta: state is not a qubit");
  const Matrix& m = rho_qubit.matrix();
  const double coh = std::abs(m(0, 1));
  if (coh > 1e-10) {
    std::ostringstream os;
    os << "effective_beta: coherence " << coh << " exceeds tolerance";
    throw NotDiagonalError(os.str());
  }
  const double pg = m(0, 0).real();
  const double pe = m(1, 1).real();
  if (pe < 1e-14)
    return {std::numeric_limits<double>::infinity(), omega};
  if (pg < 1e-14)
    return {-std::numeric_limits<double>::infinity(), omega};
  return {std::log(pg / pe) / omega, omega};
}

ThermalFit fit_thermal(const DensityMatrix& rho, const Hamiltonian& h_local) {
  if (rho.dim() != h_local.dim())
    throw DimensionMismatchError("fit_thermal: dimension mismatch");
  HermitianEigen e = eigh(h_local.matrix());
  const Matrix in_basis = e.eigenvectors.adjoint() * rho.matrix() * e.eigenvectors;

  ThermalFit fit;
  for (Eigen::Index i = 0; i < in_basis.rows(); ++i)
    for (Eigen::Index j = 0; j < in_basis.cols(); ++j)
      if (i != j) fit.coherence = std::max(fit.coherence, std::abs(in_basis(i, j)));

  // ln p = a - beta * energy, weighted least squares; populations at the
  // regularization floor contribute nothing.
  double sw = 0, se = 0, sl = 0, see = 0, sel = 0;
  for (Eigen::Index i = 0; i < in_basis.rows(); ++i) {
    const double p = std::max(in_basis(i, i).real(), 1e-300);
    if (p < 1e-14) continue;
    const double lnp = std::log(p);
    const double eps = e.eigenvalues(i);
    sw += 1;
    se += eps;
    sl += lnp;
    see += eps * eps;
    sel += eps * lnp;
  }
  const double det = sw * see - se * se;
  if (std::abs(det) < 1e-12) {
    // Energies all equal: only the maximally mixed state is thermal.
    fit.beta = 0;
  } else {
    fit.beta = -(sw * sel - se * sl) / det;
  }
  const DensityMatrix gibbs = thermal_state(h_local, fit.beta);
  fit.residual = (gibbs.matrix() - rho.matrix()).cwiseAbs().maxCoeff();
  return fit;
}

DensityMatrix locally_thermal_xstate_sampler(std::uint64_t seed, double omega) {
  Rng rng(seed);
  // Dirichlet(1,1,1,1) with a small floor keeping every population away
  // from zero, so the implied |beta| stays moderate.
  double w[4];
  double total = 0;
  for (double& v : w) {
    v = -std::log(1.0 - rng.uniform());
    total += v;
  }
  XState x;
  x.rho11 = 0.999 * w[0] / total + 0.00025;
  x.rho44 = 0.999 * w[3] / total + 0.00025;
  const double mid = 0.999 * (w[1] + w[2]) / total + 0.0005;
  x.rho22 = x.rho33 = 0.5 * mid;
  // Ground population at least the excited one (for omega > 0), so the
  // fitted temperature is nonnegative and the tight Landauer slack stays
  // below the basic one.
  const bool want_swap = omega >= 0 ? x.rho11 < x.rho44 : x.rho11 > x.rho44;
  if (want_swap) std::swap(x.rho11, x.rho44);

  const double s23 = rng.uniform(0.0, 0.999);
  const double ph23 = rng.uniform(0.0, 2.0 * M_PI);
  x.rho23 = std::polar(s23 * std::sqrt(x.rho22 * x.rho33), ph23);
  const double s14 = rng.uniform(0.0, 0.999);
  const double ph14 = rng.uniform(0.0, 2.0 * M_PI);
  x.rho14 = std::polar(s14 * std::sqrt(x.rho11 * x.rho44), ph14);
  return xstate_to_density(x);
}

DensityMatrix random_density_matrix(Eigen::Index dim, Eigen::Index rank,
                                    std::uint64_t seed) {
  if (rank < 1 || rank > dim)
    throw DimensionMismatchError("random_density_matrix: need 1 <= rank <= dim");
  Rng rng(seed);
  Matrix g(dim, rank);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(std::move(m), {dim});
}

Matrix random_unitary(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= std::abs(d) > 0 ? d / std::abs(d) : 1.0;
  }
  return q;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  HermitianEigen e = eigh(rho.matrix());
  double s = 0;
  for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i) {
    const double p = e.eigenvalues(i);
    if (p > 1e-14) s -= p * std::log(p);
  }
  return std::max(s, 0.0);
}

double bures_angle(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return bures_angle(rho.matrix(), sigma.matrix());
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

}  // namespace ergokit
