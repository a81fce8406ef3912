#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace branching {

/// Uniform triangular lattice on {(u,v) : 0 <= v <= u <= u_max}, log2-scale units.
class GridSpec {
 public:
  GridSpec() = default;
  /// Throws std::invalid_argument unless u_max / step is a positive integer.
  GridSpec(double u_max, double step);

  double u_max() const { return u_max_; }
  double step() const { return step_; }
  std::size_t n() const { return n_; }

  double coord(std::size_t i) const { return static_cast<double>(i) * step_; }
  std::size_t point_count() const { return (n_ + 1) * (n_ + 2) / 2; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * (i + 1) / 2 + j; }

  /// Index of a lattice-aligned coordinate; throws std::invalid_argument otherwise.
  std::size_t aligned_index(double x) const;

  bool operator==(const GridSpec& other) const = default;

 private:
  double u_max_ = 1.0;
  double step_ = 1.0;
  std::size_t n_ = 1;
};

/// A sampled two-scale branching function. Values are finite, nonnegative and
/// vanish on the diagonal.
class TwoScaleGrid {
 public:
  explicit TwoScaleGrid(GridSpec spec);
  /// Throws std::invalid_argument if the table violates the type invariants.
  TwoScaleGrid(GridSpec spec, std::vector<double> values);

  template <class F>
  static TwoScaleGrid sample(GridSpec spec, F&& f) {
    std::vector<double> values(spec.point_count());
    for (std::size_t i = 0; i <= spec.n(); ++i) {
      for (std::size_t j = 0; j < i; ++j) values[spec.index(i, j)] = f(spec.coord(i), spec.coord(j));
    }
    return TwoScaleGrid(spec, std::move(values));
  }

  const GridSpec& spec() const { return spec_; }
  std::span<const double> values() const { return values_; }

  double at(std::size_t i, std::size_t j) const { return values_[spec_.index(i, j)]; }
  /// Writes a value off the diagonal; negative or non-finite values throw.
  void set(std::size_t i, std::size_t j, double value);

  /// Piecewise-linear interpolation on the triangulated lattice; each square cell
  /// is split along its diagonal parallel to v = u so the diagonal stays exactly 0.
  /// Throws std::domain_error outside 0 <= v <= u <= u_max.
  double eval(double u, double v) const;

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

inline double eval_bilinear(const TwoScaleGrid& psi, double u, double v) { return psi.eval(u, v); }

}  // namespace branching
