#include "ergokit/qmath.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>
#include <sstream>

namespace ergokit {

namespace {

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << who << ": matrix is " << m.rows() << "x" << m.cols() << ", not square";
    throw DimensionMismatchError(os.str());
  }
}

}  // namespace

HermitianEigen eigh(const Matrix& m, double herm_tol) {
  require_square(m, "eigh");
  const double dev = hermiticity_error(m);
  if (dev > herm_tol) {
    std::ostringstream os;
    os << "eigh: input not Hermitian, max |m - m^dag| = " << dev
       << " exceeds tolerance " << herm_tol;
    throw NotHermitianError(os.str());
  }
  // Work on the exactly Hermitian part so the decomposition is insensitive
  // to which half of the tolerance band the input sits in.
  Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw Error("eigh: eigendecomposition failed to converge");
  return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix partial_trace(const Matrix& m, const std::vector<Eigen::Index>& dims,
                     const std::vector<int>& keep) {
  require_square(m, "partial_trace");
  Eigen::Index total = 1;
  for (Eigen::Index d : dims) total *= d;
  if (total != m.rows()) {
    std::ostringstream os;
    os << "partial_trace: factor dimensions multiply to " << total
       << " but matrix dimension is " << m.rows();
    throw DimensionMismatchError(os.str());
  }
  const int nf = static_cast<int>(dims.size());
  std::vector<bool> kept(nf, false);
  for (int k : keep) {
    if (k < 0 || k >= nf)
      throw DimensionMismatchError("partial_trace: keep index out of range");
    kept[k] = true;
  }

  Eigen::Index dkeep = 1;
  for (int f = 0; f < nf; ++f)
    if (kept[f]) dkeep *= dims[f];

  // Row-major strides of each factor in the full index.
  std::vector<Eigen::Index> stride(nf, 1);
  for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];
  // Strides within the kept-only index, original factor order.
  std::vector<Eigen::Index> kstride(nf, 0);
  Eigen::Index acc = 1;
  for (int f = nf - 1; f >= 0; --f) {
    if (kept[f]) {
      kstride[f] = acc;
      acc *= dims[f];
    }
  }

  Matrix out = Matrix::Zero(dkeep, dkeep);
  std::vector<Eigen::Index> row_idx(nf), col_idx(nf);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Eigen::Index rr = r;
    for (int f = 0; f < nf; ++f) {
      row_idx[f] = rr / stride[f];
      rr %= stride[f];
    }
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      Eigen::Index cc = c;
      bool diag_traced = true;
      for (int f = 0; f < nf; ++f) {
        col_idx[f] = cc / stride[f];
        cc %= stride[f];
        if (!kept[f] && col_idx[f] != row_idx[f]) {
          diag_traced = false;
          break;
        }
      }
      if (!diag_traced) continue;
      Eigen::Index ro = 0, co = 0;
      for (int f = 0; f < nf; ++f) {
        if (kept[f]) {
          ro += row_idx[f] * kstride[f];
          co += col_idx[f] * kstride[f];
        }
      }
      out(ro, co) += m(r, c);
    }
  }
  return out;
}

Matrix matrix_log_unitary(const Matrix& u, double unitary_tol) {
  require_square(u, "matrix_log_unitary");
  const double dev = unitarity_error(u);
  if (dev > unitary_tol) {
    std::ostringstream os;
    os << "matrix_log_unitary: input not unitary, max |u^dag u - 1| = " << dev;
    throw NotUnitaryError(os.str());
  }
  // A unitary is normal, so its Schur form is diagonal and Q collects an
  // orthonormal eigenbasis even through degenerate eigenvalues.
  Eigen::ComplexSchur<Matrix> schur(u);
  if (schur.info() != Eigen::Success)
    throw Error("matrix_log_unitary: Schur decomposition failed");
  const Matrix& q = schur.matrixU();
  RealVector phases(u.rows());
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    double theta = std::arg(schur.matrixT()(i, i));
    if (theta <= -M_PI) theta = M_PI;  // principal branch (-pi, pi]
    phases(i) = theta;
  }
  Matrix g = q * phases.asDiagonal() * q.adjoint();
  g = 0.5 * (g + g.adjoint());
  const double recon = (exp_ih(g, 1.0) - u).cwiseAbs().maxCoeff();
  if (recon > 1e-9) {
    std::ostringstream os;
    os << "matrix_log_unitary: exp(iG) reconstructs input only to " << recon;
    throw Error(os.str());
  }
  return g;
}

Matrix matrix_fn(const Matrix& m, const std::function<double(double)>& f) {
  HermitianEigen e = eigh(m);
  RealVector mapped(e.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    const double y = f(e.eigenvalues(i));
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os << "matrix_fn: f(" << e.eigenvalues(i) << ") is not finite";
      throw DomainError(os.str());
    }
    mapped(i) = y;
  }
  return e.eigenvectors * mapped.asDiagonal() * e.eigenvectors.adjoint();
}

Matrix matrix_sqrt_psd(const Matrix& m) {
  return matrix_fn(m, [](double x) -> double {
    if (x < -1e-10) {
      std::ostringstream os;
      os << "matrix_sqrt_psd: eigenvalue " << x << " below PSD tolerance";
      throw DomainError(os.str());
    }
    return std::sqrt(std::max(x, 0.0));
  });
}

Matrix matrix_log_regularized(const Matrix& m) {
  return matrix_fn(m, [](double x) { return std::log(std::max(x, 1e-14)); });
}

Matrix exp_ih(const Matrix& g, double s) {
  HermitianEigen e = eigh(g);
  Vector phases(e.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::polar(1.0, s * e.eigenvalues(i));
  return e.eigenvectors * phases.asDiagonal() * e.eigenvectors.adjoint();
}

double bures_angle(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionMismatchError("bures_angle: dimension mismatch");
  const Matrix root = matrix_sqrt_psd(rho);
  Matrix inner = root * sigma * root;
  inner = 0.5 * (inner + inner.adjoint());
  HermitianEigen e = eigh(inner);
  double fidelity = 0.0;
  for (Eigen::Index i = 0; i < e.eigenvalues.size(); ++i)
    fidelity += std::sqrt(std::max(e.eigenvalues(i), 0.0));
  fidelity = std::clamp(fidelity, 0.0, 1.0);
  return std::acos(fidelity);
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows())
    throw DimensionMismatchError("trace_distance: dimension mismatch");
  HermitianEigen e = eigh(rho - sigma);
  return 0.5 * e.eigenvalues.cwiseAbs().sum();
}

}  // namespace ergokit
