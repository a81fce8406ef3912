#pragma once

#include <span>
#include <vector>

namespace branching {

/// Continuous piecewise-linear function on [0, inf) with g(0) = 0.
///
/// `slopes[k]` applies on [breakpoints[k], breakpoints[k+1]). When there are as
/// many slopes as breakpoints the last slope extends to infinity; with one fewer
/// slope the function is constant past the last breakpoint.
class OneVarPL {
 public:
  OneVarPL() : OneVarPL({0.0}, {}) {}
  /// Throws std::invalid_argument on malformed breakpoints or slope counts.
  OneVarPL(std::vector<double> breakpoints, std::vector<double> slopes);

  /// Interpolates samples on {0, step, ..., (n-1) step}; constant afterwards.
  /// The first sample must be 0.
  static OneVarPL from_samples(double step, std::span<const double> samples);

  double operator()(double x) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& slopes() const { return slopes_; }

  double max_slope() const;
  double min_slope() const;
  /// Membership in C(alpha): increasing, alpha-Lipschitz, g(0) = 0.
  bool in_C(double alpha, double tol = 1e-12) const;

  std::vector<double> sample(double step, std::size_t count) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> slopes_;
  std::vector<double> knot_values_;
};

}  // namespace branching
