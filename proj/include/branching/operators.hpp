#pragma once

#include "branching/grid.hpp"
#include "branching/spectrum.hpp"
#include "branching/validation.hpp"

namespace branching {

inline constexpr double kDefaultThetaStep = 1.0 / 64.0;

/// G(alpha) membership: gamma(1) = 0, decreasing, alpha-Lipschitz, and
/// gamma(lambda theta) <= gamma(theta) + theta gamma(lambda) over all sample pairs.
ValidationReport validate_G(const SpectrumGrid& gamma, double alpha, double tol);

/// Closed-monotone subspace conditions: endpoint, decreasing, Lipschitz,
/// gamma(0) >= h and gamma / (1 - theta) increasing. Subadditivity is not checked.
ValidationReport validate_Gh(const SpectrumGrid& gamma, double alpha, double h, double tol);

/// validate_B plus monotonicity along diagonals and lower h-growth of psi(., 0).
ValidationReport validate_Bh(const TwoScaleGrid& psi, double alpha, double h, double tol);

/// Finite-window surrogate of the normalized limsup: max over lattice u in
/// [u_min, u_max] of psi(u, theta u) / u.
SpectrumGrid gamma_limit(const TwoScaleGrid& psi, double u_min, double theta_step = kDefaultThetaStep);

/// psi(u,v) = u gamma(v/u). Throws std::invalid_argument if gamma fails validate_G.
TwoScaleGrid gamma_inverse(const SpectrumGrid& gamma, const GridSpec& spec);

/// phi(theta) = gamma(theta) / (1 - theta), endpoint set to the sup over theta < 1.
AssouadSpectrumGrid psi_transform(const SpectrumGrid& gamma);

/// Projection onto the closed monotone subspace: max over lattice z of
/// psi(u-z, v-z) (z <= v) and h (z - v) + psi(u-z, 0) (z >= v).
TwoScaleGrid phi_h(const TwoScaleGrid& psi, double h, double alpha);

/// (1 - theta) max{h, running max of gamma / (1 - theta)}.
SpectrumGrid omega_h(const SpectrumGrid& gamma, double h);

/// kappa (1 - max(theta, lambda)).
SpectrumGrid h_kappa_lambda(double kappa, double lambda, double theta_step = kDefaultThetaStep);

/// Running maximum over [0, theta].
AssouadSpectrumGrid upper_spectrum(const AssouadSpectrumGrid& phi);

struct DeviationReport {
  double sup_deviation = 0.0;
  double witness_theta = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

/// Sup over theta of |gamma_limit(phi_h(psi)) - omega_h(gamma_limit(psi))|.
DeviationReport verify_commuting(const TwoScaleGrid& psi, double h, double alpha, double u_min,
                                 double theta_step = kDefaultThetaStep);

/// Estimate of the Lipschitz constant of gamma from adjacent samples.
double lipschitz_constant(const SpectrumGrid& gamma);

}  // namespace branching
