#include "branching/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace branching {

namespace {
constexpr double kAlignTol = 1e-9;
}

GridSpec::GridSpec(double u_max, double step) : u_max_(u_max), step_(step) {
  if (!(step > 0.0) || !(u_max > 0.0) || !std::isfinite(u_max)) {
    throw std::invalid_argument("GridSpec: u_max and step must be positive");
  }
  const double ratio = u_max / step;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > kAlignTol * std::max(1.0, ratio)) {
    throw std::invalid_argument("GridSpec: step must divide u_max");
  }
  n_ = static_cast<std::size_t>(rounded);
  u_max_ = static_cast<double>(n_) * step_;
}

std::size_t GridSpec::aligned_index(double x) const {
  const double ratio = x / step_;
  const double rounded = std::round(ratio);
  if (rounded < 0.0 || rounded > static_cast<double>(n_) ||
      std::abs(ratio - rounded) > kAlignTol * std::max(1.0, std::abs(ratio))) {
    throw std::invalid_argument("value " + std::to_string(x) + " is not lattice-aligned");
  }
  return static_cast<std::size_t>(rounded);
}

TwoScaleGrid::TwoScaleGrid(GridSpec spec) : spec_(spec), values_(spec.point_count(), 0.0) {}

TwoScaleGrid::TwoScaleGrid(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.size() != spec_.point_count()) {
    throw std::invalid_argument("TwoScaleGrid: value table does not match GridSpec");
  }
  for (std::size_t i = 0; i <= spec_.n(); ++i) {
    if (values_[spec_.index(i, i)] != 0.0) {
      throw std::invalid_argument("TwoScaleGrid: diagonal must be zero");
    }
  }
  for (double x : values_) {
    if (!std::isfinite(x) || x < 0.0) {
      throw std::invalid_argument("TwoScaleGrid: values must be finite and nonnegative");
    }
  }
}

void TwoScaleGrid::set(std::size_t i, std::size_t j, double value) {
  if (j >= i || i > spec_.n()) throw std::out_of_range("TwoScaleGrid::set: not an off-diagonal lattice point");
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument("TwoScaleGrid::set: values must be finite and nonnegative");
  }
  values_[spec_.index(i, j)] = value;
}

double TwoScaleGrid::eval(double u, double v) const {
  const double slack = kAlignTol * std::max(1.0, spec_.u_max());
  if (!(v >= -slack) || !(u <= spec_.u_max() + slack) || v > u + slack) {
    throw std::domain_error("eval: (u,v) outside 0 <= v <= u <= u_max");
  }
  const double a = std::clamp(u / spec_.step(), 0.0, static_cast<double>(spec_.n()));
  const double b = std::clamp(v / spec_.step(), 0.0, a);
  const std::size_t last = spec_.n() - 1;
  const std::size_t i = std::min(static_cast<std::size_t>(a), last);
  const std::size_t j = std::min(static_cast<std::size_t>(b), i);
  const double fu = a - static_cast<double>(i);
  double fv = b - static_cast<double>(j);
  if (j == i) fv = std::min(fv, fu);

  const double p00 = at(i, j);
  const double p11 = at(i + 1, j + 1);
  if (fu >= fv) {
    const double p10 = at(i + 1, j);
    return p00 + fu * (p10 - p00) + fv * (p11 - p10);
  }
  const double p01 = at(i, j + 1);
  return p00 + fv * (p01 - p00) + fu * (p11 - p01);
}

}  // namespace branching
