#pragma once

#include <random>

#include "branching/grid.hpp"
#include "branching/one_var.hpp"
#include "branching/spectrum.hpp"

namespace branching {

using Rng = std::mt19937_64;

/// Increasing PL function with g(0) = 0, slopes in [0, alpha], breakpoints on
/// multiples of `step` inside [0, u_max].
OneVarPL random_C(Rng& rng, double alpha, double u_max, double step);

/// Sum of a scaled sup of minimal extensions and a capped linear term; lies in
/// B(alpha) exactly at every lattice point.
TwoScaleGrid random_B(Rng& rng, double alpha, const GridSpec& spec);

/// Maximum of 1..max_terms functions h_{kappa,lambda}, kappa uniform in
/// [kappa_lo, kappa_hi] and lambda on the theta lattice.
SpectrumGrid random_hkl_max(Rng& rng, double kappa_lo, double kappa_hi, int max_terms, double theta_step);

/// Random walk through the samples keeping gamma decreasing, alpha-Lipschitz,
/// gamma(0) in [h, alpha], gamma(1) = 0 and gamma / (1 - theta) increasing.
SpectrumGrid random_monotone_spectrum(Rng& rng, double alpha, double h, double theta_step);

/// Convex combination of the two families above; an element of G(alpha).
SpectrumGrid random_G(Rng& rng, double alpha, double theta_step);

}  // namespace branching
