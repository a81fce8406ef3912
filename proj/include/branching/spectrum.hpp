#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace branching {

/// Function sampled on {0, theta_step, ..., 1}; linear between samples.
class SpectrumGrid {
 public:
  SpectrumGrid() = default;
  /// Throws std::invalid_argument unless 1/theta_step is an integer and values are finite, >= 0.
  SpectrumGrid(double theta_step, std::vector<double> values);
  /// All-zero grid.
  explicit SpectrumGrid(double theta_step);

  template <class F>
  static SpectrumGrid sample(double theta_step, F&& f) {
    SpectrumGrid out(theta_step);
    for (std::size_t k = 0; k < out.values_.size(); ++k) out.values_[k] = f(out.theta(k));
    out.check();
    return out;
  }

  double theta_step() const { return theta_step_; }
  std::size_t size() const { return values_.size(); }
  std::size_t last() const { return values_.size() - 1; }
  double theta(std::size_t k) const;
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const { return values_; }

  /// Linear interpolation; argument clamped to [0, 1].
  double eval(double theta) const;

 private:
  void check() const;

  double theta_step_ = 1.0;
  std::vector<double> values_;
};

/// Elements of A(alpha): phi(theta) = gamma(theta) / (1 - theta) with the endpoint included.
using AssouadSpectrumGrid = SpectrumGrid;

}  // namespace branching
