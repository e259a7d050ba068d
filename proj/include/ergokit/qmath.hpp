#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "ergokit/errors.hpp"

namespace ergokit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigendecomposition of a Hermitian matrix: eigenvalues ascending,
/// eigenvectors as columns of a unitary matrix.
struct HermitianEigen {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

template <typename Derived>
Matrix dagger(const Eigen::MatrixBase<Derived>& m) {
  return m.adjoint();
}

/// Max entrywise deviation from Hermiticity, |m - m^dag|.
template <typename Derived>
double hermiticity_error(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Max entrywise deviation of u^dag u from the identity.
template <typename Derived>
double unitarity_error(const Eigen::MatrixBase<Derived>& u) {
  Matrix g = u.adjoint() * u;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

/// Kronecker (tensor) product, dim = dim(a) * dim(b).
template <typename DerivedA, typename DerivedB>
Matrix tensor(const Eigen::MatrixBase<DerivedA>& a,
              const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b.derived();
  return out;
}

/// Diagonalize a Hermitian matrix. Throws NotHermitianError when the
/// input deviates from m = m^dag by more than herm_tol entrywise.
HermitianEigen eigh(const Matrix& m, double herm_tol = 1e-10);

/// Trace out all tensor factors not listed in `keep`. `dims` are the
/// factor dimensions whose product must equal the matrix dimension;
/// kept factors stay in their original order.
Matrix partial_trace(const Matrix& m, const std::vector<Eigen::Index>& dims,
                     const std::vector<int>& keep);

/// Principal logarithm of a unitary: returns Hermitian G with
/// exp(iG) = u and eigenphases in (-pi, pi].
Matrix matrix_log_unitary(const Matrix& u, double unitary_tol = 1e-10);

/// Apply a real scalar function to the spectrum of a Hermitian matrix:
/// V f(diag) V^dag. Throws DomainError if f produces a non-finite value.
Matrix matrix_fn(const Matrix& m, const std::function<double(double)>& f);

/// sqrt on a positive semidefinite matrix; eigenvalues in [-1e-10, 0)
/// are clipped to zero, anything below that is a DomainError.
Matrix matrix_sqrt_psd(const Matrix& m);

/// ln with eigenvalues clamped below 1e-14 (rank-deficient states are
/// routine inputs).
Matrix matrix_log_regularized(const Matrix& m);

/// exp(i s g) for Hermitian g.
Matrix exp_ih(const Matrix& g, double s);

/// Bures angle arccos tr sqrt(sqrt(rho) sigma sqrt(rho)), in [0, pi/2].
double bures_angle(const Matrix& rho, const Matrix& sigma);

/// (1/2) sum |eigenvalues of rho - sigma|, in [0, 1] for states.
double trace_distance(const Matrix& rho, const Matrix& sigma);

}  // namespace ergokit
