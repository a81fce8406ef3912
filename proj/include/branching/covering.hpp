#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "branching/dyadic.hpp"
#include "branching/grid.hpp"
#include "branching/one_var.hpp"
#include "branching/spectrum.hpp"

namespace branching {

inline constexpr std::size_t kCenterLimit = 100'000;

/// Number of level-u cells (original units) meeting the set.
std::size_t cell_count(const DyadicSet& set, int u);

/// log2 cell counts for u = 0..max_resolution, as a piecewise-linear g.
OneVarPL average_branching(const DyadicSet& set);

struct LocalCount {
  std::size_t count = 0;
  std::size_t center_stride = 1;
};

/// Max over cell corners x of the number of level-u cells meeting the closed ball
/// B(x, 2^{-v}). Above kCenterLimit cells the centers are taken with a uniform stride.
LocalCount local_covering(const DyadicSet& set, int u, int v);

struct CoverageGrid {
  TwoScaleGrid grid;
  int depth_used = 0;
  std::size_t center_stride = 1;
  int rescale_exponent = 0;
};

/// log2 local counts on the integer lattice up to ceil(spec.u_max()), made
/// monotone in u and interpolated onto spec.
CoverageGrid empirical_beta(const DyadicSet& set, const GridSpec& spec);

struct BoxDims {
  double lower = 0.0;
  double upper = 0.0;
};

/// Extremes of g(u)/u over lattice points u = k*step in [u_lo, u_hi], u > 0.
BoxDims box_dims(const OneVarPL& g, double step, double u_lo, double u_hi);

struct SpectrumEstimate {
  AssouadSpectrumGrid spectrum;
  double window_lo = 0.0;
  double window_hi = 0.0;
};

SpectrumEstimate spectrum_estimate(const CoverageGrid& beta, double u_min, double theta_step);

}  // namespace branching
