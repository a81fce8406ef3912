#pragma once

#include <string>
#include <vector>

namespace branching {

struct Violation {
  std::string property;
  /// Lattice witness in grid coordinates (u, v, w) or (theta, lambda); unused slots are 0.
  std::vector<double> witness;
  /// Amount by which the property fails, beyond the tolerance.
  double magnitude = 0.0;
};

class ValidationReport {
 public:
  bool passed() const { return violations_.empty(); }
  const std::vector<Violation>& violations() const { return violations_; }

  void add(std::string property, std::vector<double> witness, double magnitude) {
    violations_.push_back({std::move(property), std::move(witness), magnitude});
  }
  void merge(const ValidationReport& other) {
    violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
  }
  bool has(const std::string& property) const {
    for (const auto& v : violations_) {
      if (v.property == property) return true;
    }
    return false;
  }
  std::string summary(std::size_t max_items = 8) const;

 private:
  std::vector<Violation> violations_;
};

}  // namespace branching
