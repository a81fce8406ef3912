#include "branching/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace branching {

namespace {

std::size_t steps_for(double theta_step) {
  if (!(theta_step > 0.0) || theta_step > 1.0) throw std::invalid_argument("SpectrumGrid: theta_step must be in (0, 1]");
  const double inv = 1.0 / theta_step;
  const double rounded = std::round(inv);
  if (std::abs(inv - rounded) > 1e-9 * inv) throw std::invalid_argument("SpectrumGrid: 1/theta_step must be an integer");
  return static_cast<std::size_t>(rounded);
}

}  // namespace

SpectrumGrid::SpectrumGrid(double theta_step) : theta_step_(theta_step), values_(steps_for(theta_step) + 1, 0.0) {}

SpectrumGrid::SpectrumGrid(double theta_step, std::vector<double> values)
    : theta_step_(theta_step), values_(std::move(values)) {
  if (values_.size() != steps_for(theta_step) + 1) {
    throw std::invalid_argument("SpectrumGrid: expected one value per theta sample");
  }
  check();
}

void SpectrumGrid::check() const {
  for (double x : values_) {
    if (!std::isfinite(x) || x < 0.0) throw std::invalid_argument("SpectrumGrid: values must be finite and nonnegative");
  }
}

double SpectrumGrid::theta(std::size_t k) const {
  return k == last() ? 1.0 : static_cast<double>(k) / static_cast<double>(last());
}

double SpectrumGrid::eval(double theta) const {
  const double pos = std::clamp(theta, 0.0, 1.0) * static_cast<double>(last());
  const std::size_t k = std::min(static_cast<std::size_t>(pos), last() - 1);
  const double f = pos - static_cast<double>(k);
  return values_[k] + f * (values_[k + 1] - values_[k]);
}

}  // namespace branching
