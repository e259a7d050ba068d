#include "ergokit/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace ergokit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix marginal_product(const DensityMatrix& rho) {
  if (rho.factors() != 2)
    throw DimensionMismatchError("expected a two-factor state");
  return tensor(rho.marginal(0).matrix(), rho.marginal(1).matrix());
}

struct LocalThermalInfo {
  double beta;
  double beta_mismatch;
  double residual;
  bool thermal(double tol) const {
    return residual <= tol && beta_mismatch <= tol;
  }
};

LocalThermalInfo local_thermal_info(const DensityMatrix& rho,
                                    const Hamiltonian& h) {
  if (!h.has_local_parts())
    throw DimensionMismatchError(
        "Hamiltonian must carry local parts h_A, h_B for marginal "
        "temperature fits");
  ThermalFit fa = fit_thermal(rho.marginal(0), Hamiltonian(h.local_a()));
  ThermalFit fb = fit_thermal(rho.marginal(1), Hamiltonian(h.local_b()));
  LocalThermalInfo info;
  info.beta = 0.5 * (fa.beta + fb.beta);
  info.beta_mismatch = std::abs(fa.beta - fb.beta);
  info.residual = std::max(fa.residual, fb.residual);
  return info;
}

// Entropy of the post-measurement conditional ensemble when side `side` is
// measured along the Bloch direction (theta, phi).
double conditional_entropy(const DensityMatrix& rho, MeasuredSide side,
                           double theta, double phi) {
  const double nx = std::sin(theta) * std::cos(phi);
  const double ny = std::sin(theta) * std::sin(phi);
  const double nz = std::cos(theta);
  Matrix ns(2, 2);
  ns << Complex(nz, 0), Complex(nx, -ny), Complex(nx, ny), Complex(-nz, 0);
  const Matrix id2 = Matrix::Identity(2, 2);

  double out = 0;
  for (int sgn : {+1, -1}) {
    const Matrix proj = 0.5 * (id2 + static_cast<double>(sgn) * ns);
    const Matrix m = side == MeasuredSide::B ? tensor(id2, proj)
                                             : tensor(proj, id2);
    Matrix post = m * rho.matrix() * m;
    const double p = post.trace().real();
    if (p < 1e-14) continue;
    const std::vector<Eigen::Index> dims{2, 2};
    const std::vector<int> keep{side == MeasuredSide::B ? 0 : 1};
    Matrix cond = partial_trace(post, dims, keep) / p;
    HermitianEigen e = eigh(0.5 * (cond + cond.adjoint()));
    for (Eigen::Index i = 0; i < 2; ++i) {
      const double q = e.eigenvalues(i);
      if (q > 1e-14) out -= p * q * std::log(q);
    }
  }
  return out;
}

struct SimplexPoint {
  double theta, phi, value;
};

// Plain 2-d Nelder-Mead; the objective is smooth and periodic so no
// bound handling is needed.
SimplexPoint nelder_mead(const DensityMatrix& rho, MeasuredSide side,
                         std::array<SimplexPoint, 3> simplex,
                         double tol, int max_iter) {
  auto eval = [&](double th, double ph) {
    return SimplexPoint{th, ph, conditional_entropy(rho, side, th, ph)};
  };
  auto by_value = [](const SimplexPoint& a, const SimplexPoint& b) {
    return a.value < b.value;
  };
  for (int it = 0; it < max_iter; ++it) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    if (simplex[2].value - simplex[0].value < tol) break;
    const double cth = 0.5 * (simplex[0].theta + simplex[1].theta);
    const double cph = 0.5 * (simplex[0].phi + simplex[1].phi);
    SimplexPoint refl =
        eval(cth + (cth - simplex[2].theta), cph + (cph - simplex[2].phi));
    if (refl.value < simplex[0].value) {
      SimplexPoint exp_pt = eval(cth + 2 * (cth - simplex[2].theta),
                                 cph + 2 * (cph - simplex[2].phi));
      simplex[2] = exp_pt.value < refl.value ? exp_pt : refl;
    } else if (refl.value < simplex[1].value) {
      simplex[2] = refl;
    } else {
      SimplexPoint contr = eval(cth + 0.5 * (simplex[2].theta - cth),
                                cph + 0.5 * (simplex[2].phi - cph));
      if (contr.value < simplex[2].value) {
        simplex[2] = contr;
      } else {
        for (int k = 1; k < 3; ++k)
          simplex[k] = eval(
              simplex[0].theta + 0.5 * (simplex[k].theta - simplex[0].theta),
              simplex[0].phi + 0.5 * (simplex[k].phi - simplex[0].phi));
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  return simplex[0];
}

}  // namespace

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw DimensionMismatchError("relative_entropy: dimension mismatch");
  HermitianEigen se = eigh(sigma.matrix());

  double outside = 0;
  for (Eigen::Index j = 0; j < se.eigenvalues.size(); ++j) {
    if (se.eigenvalues(j) < 1e-12) {
      const Complex q =
          se.eigenvectors.col(j).dot(rho.matrix() * se.eigenvectors.col(j));
      outside += std::max(q.real(), 0.0);
    }
  }
  if (outside > 1e-8) return kInf;

  double cross = 0;
  for (Eigen::Index j = 0; j < se.eigenvalues.size(); ++j) {
    const Complex q =
        se.eigenvectors.col(j).dot(rho.matrix() * se.eigenvectors.col(j));
    cross += q.real() * std::log(std::max(se.eigenvalues(j), 1e-14));
  }
  return std::max(-von_neumann_entropy(rho) - cross, 0.0);
}

double mutual_information(const DensityMatrix& rho) {
  if (rho.factors() != 2)
    throw DimensionMismatchError("mutual_information: expected two factors");
  return von_neumann_entropy(rho.marginal(0)) +
         von_neumann_entropy(rho.marginal(1)) - von_neumann_entropy(rho);
}

double multipartite_mutual_information(const DensityMatrix& rho) {
  if (rho.factors() < 2)
    throw DimensionMismatchError(
        "multipartite_mutual_information: need at least two factors");
  double sum = 0;
  for (int f = 0; f < rho.factors(); ++f)
    sum += von_neumann_entropy(rho.marginal(f));
  return sum - von_neumann_entropy(rho);
}

Matrix correlation_matrix(const DensityMatrix& rho) {
  return rho.matrix() - marginal_product(rho);
}

CorrelationReport main_identity(const DensityMatrix& rho, const Hamiltonian& h,
                                const MainIdentityOptions& opts) {
  CorrelationReport rep;
  const LocalThermalInfo info = local_thermal_info(rho, h);
  rep.beta = info.beta;
  rep.beta_mismatch = info.beta_mismatch;
  rep.thermal_residual = info.residual;
  rep.locally_thermal = info.thermal(opts.local_thermal_tol);
  if (!rep.locally_thermal) {
    std::ostringstream os;
    os << "marginals not thermal at a common temperature (residual "
       << info.residual << ", beta mismatch " << info.beta_mismatch << ")";
    rep.warning = os.str();
  }

  // Direct route: spectral ergotropy and the fitted temperature.
  rep.ergotropy_direct = ergotropy(rho, h);
  const double lhs = rep.beta * rep.ergotropy_direct;

  // Entropic route: mutual information minus the passive-to-product
  // relative entropy.
  rep.mutual_information = mutual_information(rho);
  PassiveResult pr = passive_state(rho, h);
  const Matrix prod = marginal_product(rho);
  rep.relative_entropy_passive_to_product =
      relative_entropy(pr.passive, DensityMatrix(prod, rho.dims()));
  const double rhs =
      rep.mutual_information - rep.relative_entropy_passive_to_product;

  rep.identity_residual = std::abs(lhs - rhs);
  if (std::abs(rep.beta) > 1e-9) {
    rep.ergotropy_via_identity = rhs / rep.beta;
  } else if (rep.warning.empty()) {
    rep.warning = "beta = 0: identity reduces to 0 = 0, energy form skipped";
  }

  if (opts.with_discord && rho.dims() == std::vector<Eigen::Index>{2, 2}) {
    DiscordResult d = discord(rho, MeasuredSide::B);
    rep.discord = d.discord;
    rep.holevo = d.holevo;
  }
  return rep;
}

double equal_entropy_identity(const DensityMatrix& rho1,
                              const DensityMatrix& rho2, const Hamiltonian& h,
                              double beta) {
  const double s1 = von_neumann_entropy(rho1);
  const double s2 = von_neumann_entropy(rho2);
  if (std::abs(s1 - s2) > 1e-8) {
    std::ostringstream os;
    os << "equal_entropy_identity: entropies differ by " << std::abs(s1 - s2);
    throw EntropyMismatchError(os.str());
  }
  const DensityMatrix gibbs = thermal_state(h, beta);
  const double lhs =
      beta * (h.matrix() * (rho1.matrix() - rho2.matrix())).trace().real();
  const double rhs =
      relative_entropy(rho1, gibbs) - relative_entropy(rho2, gibbs);
  return std::abs(lhs - rhs);
}

LandauerSlack inverse_landauer_check(const DensityMatrix& rho,
                                     const Hamiltonian& h) {
  const LocalThermalInfo info = local_thermal_info(rho, h);
  if (!info.thermal(1e-6)) {
    std::ostringstream os;
    os << "inverse_landauer_check: state is not locally thermal (residual "
       << info.residual << ")";
    throw Error(os.str());
  }
  const double i_ab = mutual_information(rho);
  const double e = ergotropy(rho, h);
  const double eb = bound_ergotropy(rho, h);
  return {i_ab - info.beta * e, i_ab - info.beta * (e + eb)};
}

BoundIdentityResult bound_identity(const DensityMatrix& rho,
                                   const Hamiltonian& h) {
  const LocalThermalInfo info = local_thermal_info(rho, h);
  const double e = ergotropy(rho, h);
  PassiveResult pr = passive_state(rho, h);
  EqualEntropyThermal eet = equal_entropy_thermal(pr.passive, h);
  const double eb =
      (h.matrix() * (pr.passive.matrix() - eet.state.matrix())).trace().real();

  const double i_ab = mutual_information(rho);
  const DensityMatrix prod(marginal_product(rho), rho.dims());
  const double d_th = relative_entropy(eet.state, prod);

  BoundIdentityResult out;
  out.beta = info.beta;
  out.residual_nats = std::abs(info.beta * (e + eb) - (i_ab - d_th));
  out.applicable = std::abs(info.beta) > 1e-9;
  return out;
}

DiscordResult discord(const DensityMatrix& rho, MeasuredSide side,
                      const DiscordOptions& opts) {
  if (rho.dims() != std::vector<Eigen::Index>{2, 2})
    throw DimensionMismatchError("discord: expected a two-qubit state");

  // Coarse scan over the half-dome; antipodal directions give the same
  // projector pair.
  std::array<SimplexPoint, 3> best{SimplexPoint{0, 0, kInf},
                                   SimplexPoint{0, 0, kInf},
                                   SimplexPoint{0, 0, kInf}};
  for (int it = 0; it < opts.grid; ++it) {
    const double theta = 0.5 * M_PI * it / (opts.grid - 1);
    for (int ip = 0; ip < opts.grid; ++ip) {
      const double phi = 2.0 * M_PI * ip / opts.grid;
      const double v = conditional_entropy(rho, side, theta, phi);
      if (v < best[2].value) {
        best[2] = {theta, phi, v};
        std::sort(best.begin(), best.end(),
                  [](const SimplexPoint& a, const SimplexPoint& b) {
                    return a.value < b.value;
                  });
      }
    }
  }
  // Guard against a degenerate starting simplex from neighboring grid hits.
  const double sep = 0.5 * M_PI / opts.grid;
  if (std::abs(best[1].theta - best[0].theta) +
          std::abs(best[1].phi - best[0].phi) < 1e-12)
    best[1] = {best[0].theta + sep, best[0].phi,
               conditional_entropy(rho, side, best[0].theta + sep, best[0].phi)};
  if (std::abs(best[2].theta - best[0].theta) +
          std::abs(best[2].phi - best[0].phi) < 1e-12 ||
      std::abs(best[2].theta - best[1].theta) +
          std::abs(best[2].phi - best[1].phi) < 1e-12)
    best[2] = {best[0].theta, best[0].phi + sep,
               conditional_entropy(rho, side, best[0].theta, best[0].phi + sep)};

  SimplexPoint opt = nelder_mead(rho, side, best, opts.tol, opts.max_iterations);

  const DensityMatrix kept =
      side == MeasuredSide::B ? rho.marginal(0) : rho.marginal(1);
  const double holevo = von_neumann_entropy(kept) - opt.value;
  const double i_ab = mutual_information(rho);
  return {i_ab - holevo, holevo, opt.theta, opt.phi};
}

double zero_ergotropy_condition(const DensityMatrix& rho, const Hamiltonian& h) {
  const double e = ergotropy(rho, h);
  if (std::abs(e) > 1e-8) {
    std::ostringstream os;
    os << "zero_ergotropy_condition: ergotropy " << e << " is not zero";
    throw NotZeroErgotropyError(os.str());
  }
  DiscordResult d = discord(rho, MeasuredSide::B);
  PassiveResult pr = passive_state(rho, h);
  const DensityMatrix prod(marginal_product(rho), rho.dims());
  const double dp = relative_entropy(pr.passive, prod);
  return std::abs(d.discord + d.holevo - dp);
}

double general_state_identity(const DensityMatrix& rho, const Hamiltonian& h,
                              double beta) {
  const DensityMatrix gibbs = thermal_state(h, beta);
  const double lhs = beta * ergotropy(rho, h);

  const double i_ab = mutual_information(rho);
  PassiveResult pr = passive_state(rho, h);
  const double d_passive = relative_entropy(pr.passive, gibbs);

  const Matrix prod = marginal_product(rho);
  const Matrix chi = rho.matrix() - prod;
  const Matrix ln_prod = matrix_log_regularized(prod);
  const Matrix ln_gibbs = matrix_log_regularized(gibbs.matrix());
  const double chi_term = (chi * (ln_prod - ln_gibbs)).trace().real();

  const DensityMatrix prod_state(prod, rho.dims());
  const double d_prod = relative_entropy(prod_state, gibbs);
  if (!std::isfinite(d_passive) || !std::isfinite(d_prod))
    throw SupportViolationError(
        "general_state_identity: relative entropy diverges (support "
        "mismatch with the reference Gibbs state)");

  const double rhs = i_ab - d_passive + chi_term + d_prod;
  return std::abs(lhs - rhs);
}

double bath_assisted_gap(const DensityMatrix& rho, const Hamiltonian& h,
                         double beta) {
  if (std::abs(beta) < 1e-12)
    throw DomainError("bath_assisted_gap: beta must be nonzero");
  const DensityMatrix gibbs = thermal_state(h, beta);
  auto free_energy = [&](const DensityMatrix& s) {
    return (h.matrix() * s.matrix()).trace().real() -
           von_neumann_entropy(s) / beta;
  };
  const double e_beta = free_energy(rho) - free_energy(gibbs);
  return e_beta - ergotropy(rho, h);
}

}  // namespace ergokit
