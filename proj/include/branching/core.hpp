#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "branching/grid.hpp"
#include "branching/one_var.hpp"
#include "branching/validation.hpp"

namespace branching {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Lattice triple count above which subadditivity is checked on a random sample.
inline constexpr std::size_t kExhaustiveTripleLimit = 256;
inline constexpr std::size_t kSampledTriples = 1'000'000;

/// Checks diagonal zero, subadditivity, monotonicity in each coordinate and, for
/// finite alpha, the bound psi(u,v) <= alpha (u - v). Failures are reported.
ValidationReport validate_B(const TwoScaleGrid& psi, double alpha, double tol, std::uint64_t seed = 0);

/// Pointwise maximum over a nonempty family sharing one GridSpec.
TwoScaleGrid sup_closure(std::span<const TwoScaleGrid> family);

/// xi(u,v) = g~(u) - g~(v) with g~(a) = g(max(a,b)) - g(b).
TwoScaleGrid minimal_extension(const OneVarPL& g, double b, const GridSpec& spec);

/// Largest increasing alpha-Lipschitz lattice minorant of samples h on [b, u_max],
/// pinned to 0 on [0, b]. Samples live on {0, step, ...}; b is a sample index.
std::vector<double> largest_lipschitz_minorant_samples(std::span<const double> h, double alpha, double step,
                                                       std::size_t b, double tol = 1e-9);

OneVarPL largest_lipschitz_minorant(std::span<const double> h, double alpha, double step, std::size_t b,
                                    double tol = 1e-9);

/// Monotone envelope eta(u) of max(0, beta(u,v) - alpha (u - v)), one entry per lattice u.
std::vector<double> lipschitz_excess(const TwoScaleGrid& beta, double alpha);

/// Supremum over lattice anchors b of the minimal extensions of the per-anchor
/// largest minorants. Throws std::invalid_argument if beta is not in B.
TwoScaleGrid lipschitz_approximation(const TwoScaleGrid& beta, double alpha);

/// Rescaling by 2^{-z}; z must be lattice-aligned and nonnegative.
TwoScaleGrid rescale_T(const TwoScaleGrid& psi, double z);

}  // namespace branching
