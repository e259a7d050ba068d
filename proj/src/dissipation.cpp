#include "ergokit/dissipation.hpp"

#include <cmath>
#include <sstream>

namespace ergokit {

namespace {

Matrix sigma_plus() {
  Matrix s = Matrix::Zero(2, 2);
  s(1, 0) = 1.0;  // |e><g|
  return s;
}

struct Operators {
  Matrix sp[2], sm[2];  // raising/lowering per qubit
  Matrix h0_unit;       // n1 + n2
  Matrix hd_unit;       // sp1 sm2 + sp2 sm1
};

const Operators& ops() {
  static const Operators o = [] {
    Operators v;
    const Matrix id2 = Matrix::Identity(2, 2);
    const Matrix sp = sigma_plus();
    const Matrix sm = sp.adjoint();
    v.sp[0] = tensor(sp, id2);
    v.sm[0] = tensor(sm, id2);
    v.sp[1] = tensor(id2, sp);
    v.sm[1] = tensor(id2, sm);
    v.h0_unit = v.sp[0] * v.sm[0] + v.sp[1] * v.sm[1];
    v.hd_unit = v.sp[0] * v.sm[1] + v.sp[1] * v.sm[0];
    return v;
  }();
  return o;
}

double gamma_entry(const DissipationParams& p, int i, int j) {
  if (i == j) return i == 0 ? p.gamma11 : p.gamma22;
  return p.gamma12;
}

}  // namespace

DissipationParams validate(DissipationParams p) {
  if (p.beta_e <= 0)
    throw DomainError("DissipationParams: beta_e must be positive");
  if (p.gamma11 < 0 || p.gamma22 < 0)
    throw DomainError("DissipationParams: diagonal decay rates must be >= 0");
  if (p.gamma12 * p.gamma12 > p.gamma11 * p.gamma22 + 1e-12)
    throw DomainError(
        "DissipationParams: gamma12^2 > gamma11 gamma22 (unphysical "
        "collective coupling)");
  const double expected = 1.0 / std::expm1(p.beta_e * p.omega);
  if (p.nbar == 0.0) {
    p.nbar = expected;
  } else if (std::abs(p.nbar - expected) > 1e-12 * std::max(1.0, expected)) {
    throw DomainError("DissipationParams: nbar inconsistent with beta_e");
  }
  return p;
}

DissipationParams DissipationParams::collective(double omega, double gamma,
                                                double f, double beta_e) {
  DissipationParams p;
  p.omega = omega;
  p.f = f;
  p.beta_e = beta_e;
  p.gamma11 = p.gamma22 = p.gamma12 = gamma;
  p.nbar = 0.0;
  return validate(p);
}

DissipationParams DissipationParams::independent(double omega, double gamma,
                                                 double f, double beta_e) {
  DissipationParams p;
  p.omega = omega;
  p.f = f;
  p.beta_e = beta_e;
  p.gamma11 = p.gamma22 = gamma;
  p.gamma12 = 0.0;
  p.nbar = 0.0;
  return validate(p);
}

double DissipationParams::rate_scale() const {
  const double g = std::max(gamma11, gamma22);
  return std::max({g * (nbar + 1.0), std::abs(omega), std::abs(f)});
}

Matrix liouvillian_apply(const Matrix& rho, const DissipationParams& p) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw DimensionMismatchError("liouvillian_apply: expected a 4x4 matrix");
  const Operators& o = ops();
  const Matrix h = p.omega * o.h0_unit + p.f * o.hd_unit;

  Matrix out = Complex(0, -1) * (h * rho - rho * h);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double g = gamma_entry(p, i, j);
      if (g == 0.0) continue;
      // Emission into the bath: gamma_ij (nbar+1) terms.
      const Matrix em = o.sp[i] * o.sm[j];
      out += g * (p.nbar + 1.0) *
             (o.sm[j] * rho * o.sp[i] - 0.5 * (em * rho + rho * em));
      // Absorption from the bath: gamma_ij nbar terms.
      const Matrix ab = o.sm[i] * o.sp[j];
      out += g * p.nbar *
             (o.sp[j] * rho * o.sm[i] - 0.5 * (ab * rho + rho * ab));
    }
  }
  return out;
}

Trajectory evolve(const DensityMatrix& rho0, const DissipationParams& p,
                  double t_final, double dt, int store_stride) {
  if (t_final <= 0 || dt <= 0)
    throw DomainError("evolve: t_final and dt must be positive");
  const double dt_max = 0.05 / p.rate_scale();
  if (dt > dt_max) {
    std::ostringstream os;
    os << "evolve: dt = " << dt << " exceeds stability bound " << dt_max;
    throw StepTooLargeError(os.str(), dt_max);
  }
  if (store_stride < 1) store_stride = 1;

  const long n = std::max<long>(1, std::lround(std::ceil(t_final / dt - 1e-12)));
  const double step = t_final / static_cast<double>(n);

  Trajectory traj;
  traj.times.reserve(n / store_stride + 2);
  traj.states.reserve(n / store_stride + 2);
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  Matrix rho = rho0.matrix();
  for (long k = 0; k < n; ++k) {
    const Matrix k1 = liouvillian_apply(rho, p);
    const Matrix k2 = liouvillian_apply(rho + 0.5 * step * k1, p);
    const Matrix k3 = liouvillian_apply(rho + 0.5 * step * k2, p);
    const Matrix k4 = liouvillian_apply(rho + step * k3, p);
    rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((k + 1) % store_stride == 0 || k + 1 == n) {
      const double t = (k + 1) * step;
      try {
        traj.states.push_back(DensityMatrix::sanitized(rho, rho0.dims()));
      } catch (const PositivityError& err) {
        std::ostringstream os;
        os << "evolve: state lost positivity at t = " << t << " ("
           << err.what() << "); retry with dt = " << step / 2;
        throw StepTooLargeError(os.str(), step / 2);
      }
      traj.times.push_back(t);
    }
  }
  return traj;
}

DensityMatrix evolve_to_convergence(const DensityMatrix& rho0,
                                    const DissipationParams& p, double dt,
                                    double max_time) {
  const double gamma = std::max(p.gamma11, p.gamma22);
  const double block = 10.0 / gamma;
  if (max_time <= 0) max_time = 500.0 / gamma;
  DensityMatrix current = rho0;
  double elapsed = 0;
  while (elapsed < max_time) {
    Trajectory t = evolve(current, p, block, dt, 1 << 30);
    elapsed += block;
    const double moved = trace_distance(t.final_state(), current);
    current = t.final_state();
    if (moved <= 1e-10) return current;
  }
  return current;
}

Vector ket_gg() {
  Vector v = Vector::Zero(4);
  v(0) = 1.0;
  return v;
}

Vector ket_ee() {
  Vector v = Vector::Zero(4);
  v(3) = 1.0;
  return v;
}

Vector ket_psi_plus() {
  Vector v = Vector::Zero(4);
  v(1) = v(2) = 1.0 / std::sqrt(2.0);
  return v;
}

Vector ket_psi_minus() {
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -v(1);
  return v;
}

Matrix collective_h0(double omega) { return omega * ops().h0_unit; }

DensityMatrix steady_state(const SteadyStateParams& s) {
  if (s.c < 0 || s.c > 1)
    throw DomainError("steady_state: c must lie in [0, 1]");
  if (s.beta_e <= 0)
    throw DomainError("steady_state: beta_e must be positive");
  const double x = s.omega * s.beta_e;
  const double w1 = std::exp(-x);
  const double w2 = std::exp(-2.0 * x);
  const double zp = 1.0 + w1 + w2;

  const Vector gg = ket_gg(), ee = ket_ee(), plus = ket_psi_plus(),
               minus = ket_psi_minus();
  Matrix m = (1.0 - s.c) * (minus * minus.adjoint()) +
             (s.c / zp) * (w2 * (ee * ee.adjoint()) +
                           w1 * (plus * plus.adjoint()) +
                           gg * gg.adjoint());
  return DensityMatrix(std::move(m), {2, 2});
}

double c_parameter(const DensityMatrix& rho0) {
  if (rho0.dim() != 4)
    throw DimensionMismatchError("c_parameter: expected a two-qubit state");
  const Matrix& m = rho0.matrix();
  const Vector plus = ket_psi_plus();
  const double c = m(0, 0).real() + m(3, 3).real() +
                   (plus.adjoint() * m * plus)(0, 0).real();
  return std::clamp(c, 0.0, 1.0);
}

double thermal_c(double beta_e, double omega) {
  if (beta_e <= 0) throw DomainError("thermal_c: beta_e must be positive");
  const double x = beta_e * omega;
  const double w = std::exp(-x);
  return (1.0 + w + w * w) / ((1.0 + w) * (1.0 + w));
}

double local_beta_formula(double c, double beta_e, double omega) {
  if (c < 0 || c > 1) throw DomainError("local_beta_formula: c outside [0, 1]");
  if (beta_e <= 0)
    throw DomainError("local_beta_formula: beta_e must be positive");
  const double x = beta_e * omega;
  const double num = 1.0 + 2.0 * std::cosh(x) + 2.0 * c * std::sinh(x);
  const double den = 1.0 + 2.0 * std::cosh(x) - 2.0 * c * std::sinh(x);
  return std::log(num / den) / omega;
}

}  // namespace ergokit
