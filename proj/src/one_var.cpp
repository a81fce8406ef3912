#include "branching/one_var.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace branching {

OneVarPL::OneVarPL(std::vector<double> breakpoints, std::vector<double> slopes)
    : breakpoints_(std::move(breakpoints)), slopes_(std::move(slopes)) {
  if (breakpoints_.empty() || breakpoints_.front() != 0.0) {
    throw std::invalid_argument("OneVarPL: breakpoints must start at 0");
  }
  for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
    if (!(breakpoints_[k] > breakpoints_[k - 1])) {
      throw std::invalid_argument("OneVarPL: breakpoints must be strictly increasing");
    }
  }
  if (slopes_.size() != breakpoints_.size() && slopes_.size() + 1 != breakpoints_.size()) {
    throw std::invalid_argument("OneVarPL: need one slope per segment");
  }
  for (double s : slopes_) {
    if (!std::isfinite(s)) throw std::invalid_argument("OneVarPL: slopes must be finite");
  }
  knot_values_.assign(breakpoints_.size(), 0.0);
  for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
    knot_values_[k] = knot_values_[k - 1] + slopes_[k - 1] * (breakpoints_[k] - breakpoints_[k - 1]);
  }
}

OneVarPL OneVarPL::from_samples(double step, std::span<const double> samples) {
  if (samples.empty() || samples.front() != 0.0) {
    throw std::invalid_argument("OneVarPL::from_samples: first sample must be 0");
  }
  if (!(step > 0.0)) throw std::invalid_argument("OneVarPL::from_samples: step must be positive");
  std::vector<double> bps{0.0};
  std::vector<double> slopes;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    bps.push_back(static_cast<double>(k) * step);
    slopes.push_back((samples[k] - samples[k - 1]) / step);
  }
  return OneVarPL(std::move(bps), std::move(slopes));
}

double OneVarPL::operator()(double x) const {
  if (x <= 0.0) return 0.0;
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  if (k >= slopes_.size()) return knot_values_[k];
  return knot_values_[k] + slopes_[k] * (x - breakpoints_[k]);
}

double OneVarPL::max_slope() const {
  return slopes_.empty() ? 0.0 : *std::max_element(slopes_.begin(), slopes_.end());
}

double OneVarPL::min_slope() const {
  return slopes_.empty() ? 0.0 : *std::min_element(slopes_.begin(), slopes_.end());
}

bool OneVarPL::in_C(double alpha, double tol) const {
  return min_slope() >= -tol && max_slope() <= alpha + tol;
}

std::vector<double> OneVarPL::sample(double step, std::size_t count) const {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = (*this)(static_cast<double>(k) * step);
  return out;
}

}  // namespace branching
