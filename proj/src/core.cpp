#include "branching/core.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace branching {

std::string ValidationReport::summary(std::size_t max_items) const {
  if (passed()) return "passed";
  std::ostringstream os;
  os << violations_.size() << " violation(s)";
  for (std::size_t k = 0; k < violations_.size() && k < max_items; ++k) {
    const auto& v = violations_[k];
    os << "\n  " << v.property << " at (";
    for (std::size_t c = 0; c < v.witness.size(); ++c) os << (c ? "," : "") << v.witness[c];
    os << ") by " << v.magnitude;
  }
  return os.str();
}

namespace {

// Caps the number of recorded violations per property; the report stays small
// for badly broken inputs while still failing.
class Recorder {
 public:
  explicit Recorder(ValidationReport& report) : report_(report) {}
  void operator()(const char* property, std::vector<double> witness, double magnitude) {
    if (count_++ < 64) report_.add(property, std::move(witness), magnitude);
  }

 private:
  ValidationReport& report_;
  std::size_t count_ = 0;
};

}  // namespace

ValidationReport validate_B(const TwoScaleGrid& psi, double alpha, double tol, std::uint64_t seed) {
  ValidationReport report;
  const GridSpec& spec = psi.spec();
  const std::size_t n = spec.n();

  Recorder diag(report);
  for (std::size_t i = 0; i <= n; ++i) {
    if (std::abs(psi.at(i, i)) > tol) diag("diagonal-zero", {spec.coord(i), spec.coord(i)}, std::abs(psi.at(i, i)));
  }

  // Monotone in u at fixed v: each value dominates every earlier one in its column.
  Recorder incr(report);
  for (std::size_t j = 0; j <= n; ++j) {
    double running = psi.at(j, j);
    for (std::size_t i = j + 1; i <= n; ++i) {
      const double x = psi.at(i, j);
      if (x < running - tol) incr("increasing-in-u", {spec.coord(i), spec.coord(j)}, running - tol - x);
      running = std::max(running, x);
    }
  }

  // Antitone in v at fixed u.
  Recorder decr(report);
  for (std::size_t i = 0; i <= n; ++i) {
    double running = psi.at(i, i);
    for (std::size_t j = i; j-- > 0;) {
      const double x = psi.at(i, j);
      if (x < running - tol) decr("decreasing-in-v", {spec.coord(i), spec.coord(j)}, running - tol - x);
      running = std::max(running, x);
    }
  }

  if (std::isfinite(alpha)) {
    Recorder bound(report);
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double excess = psi.at(i, j) - alpha * (spec.coord(i) - spec.coord(j)) - tol;
        if (excess > 0.0) bound("lipschitz-bound", {spec.coord(i), spec.coord(j)}, excess);
      }
    }
  }

  Recorder subadd(report);
  auto check_triple = [&](std::size_t i, std::size_t k, std::size_t j) {
    // v = j <= w = k <= u = i
    const double excess = psi.at(i, j) - psi.at(i, k) - psi.at(k, j) - tol;
    if (excess > 0.0) subadd("subadditivity", {spec.coord(i), spec.coord(j), spec.coord(k)}, excess);
  };
  if (n <= kExhaustiveTripleLimit) {
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        for (std::size_t k = j; k <= i; ++k) check_triple(i, k, j);
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n);
    for (std::size_t t = 0; t < kSampledTriples; ++t) {
      std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
      if (a < b) std::swap(a, b);
      if (b < c) std::swap(b, c);
      if (a < b) std::swap(a, b);
      check_triple(a, b, c);
    }
  }
  return report;
}

TwoScaleGrid sup_closure(std::span<const TwoScaleGrid> family) {
  if (family.empty()) throw std::invalid_argument("sup_closure: empty family");
  const GridSpec& spec = family.front().spec();
  std::vector<double> values(family.front().values().begin(), family.front().values().end());
  for (const auto& psi : family.subspan(1)) {
    if (!(psi.spec() == spec)) throw std::invalid_argument("sup_closure: mismatched GridSpec");
    const auto other = psi.values();
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = std::max(values[k], other[k]);
  }
  return TwoScaleGrid(spec, std::move(values));
}

TwoScaleGrid minimal_extension(const OneVarPL& g, double b, const GridSpec& spec) {
  if (!g.in_C(kUnbounded)) throw std::invalid_argument("minimal_extension: g must be increasing with g(0) = 0");
  if (!(b >= 0.0)) throw std::invalid_argument("minimal_extension: anchor must be nonnegative");
  const double gb = g(b);
  std::vector<double> clamped(spec.n() + 1);
  for (std::size_t i = 0; i <= spec.n(); ++i) clamped[i] = g(std::max(spec.coord(i), b)) - gb;
  std::vector<double> values(spec.point_count());
  for (std::size_t i = 0; i <= spec.n(); ++i) {
    for (std::size_t j = 0; j < i; ++j) values[spec.index(i, j)] = std::max(0.0, clamped[i] - clamped[j]);
  }
  return TwoScaleGrid(spec, std::move(values));
}

std::vector<double> largest_lipschitz_minorant_samples(std::span<const double> h, double alpha, double step,
                                                       std::size_t b, double tol) {
  if (b >= h.size()) throw std::invalid_argument("largest_lipschitz_minorant: anchor outside samples");
  if (!(alpha >= 0.0)) throw std::invalid_argument("largest_lipschitz_minorant: alpha must be nonnegative");
  for (std::size_t a = b + 1; a < h.size(); ++a) {
    if (h[a] < h[a - 1] - tol) throw std::invalid_argument("largest_lipschitz_minorant: samples must be increasing");
  }
  std::vector<double> g(h.size(), 0.0);
  // g(a) = alpha*x_a + min_{b <= a' <= a} (h(a') - alpha*x_a'), via a running minimum.
  double best = kUnbounded;
  for (std::size_t a = b; a < h.size(); ++a) {
    const double x = static_cast<double>(a) * step;
    best = std::min(best, h[a] - alpha * x);
    g[a] = std::max(0.0, best + alpha * x);
  }
  return g;
}

OneVarPL largest_lipschitz_minorant(std::span<const double> h, double alpha, double step, std::size_t b,
                                    double tol) {
  const auto g = largest_lipschitz_minorant_samples(h, alpha, step, b, tol);
  return OneVarPL::from_samples(step, g);
}

std::vector<double> lipschitz_excess(const TwoScaleGrid& beta, double alpha) {
  const GridSpec& spec = beta.spec();
  std::vector<double> eta(spec.n() + 1, 0.0);
  double running = 0.0;
  for (std::size_t i = 0; i <= spec.n(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      running = std::max(running, beta.at(i, j) - alpha * (spec.coord(i) - spec.coord(j)));
    }
    eta[i] = running;
  }
  return eta;
}

TwoScaleGrid lipschitz_approximation(const TwoScaleGrid& beta, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("lipschitz_approximation: alpha must be finite and nonnegative");
  }
  const auto report = validate_B(beta, kUnbounded, 1e-9);
  if (!report.passed()) throw std::invalid_argument("lipschitz_approximation: input not in B: " + report.summary(3));

  const GridSpec& spec = beta.spec();
  const std::size_t n = spec.n();
  std::vector<double> out(spec.point_count(), 0.0);
  std::vector<double> column(n + 1);
  for (std::size_t b = 0; b <= n; ++b) {
    for (std::size_t a = 0; a <= n; ++a) column[a] = a >= b ? beta.at(a, b) : 0.0;
    const auto g = largest_lipschitz_minorant_samples(column, alpha, spec.step(), b);
    for (std::size_t i = b + 1; i <= n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        double& cell = out[spec.index(i, j)];
        cell = std::max(cell, g[i] - g[j]);
      }
    }
  }
  return TwoScaleGrid(spec, std::move(out));
}

TwoScaleGrid rescale_T(const TwoScaleGrid& psi, double z) {
  if (!(z >= 0.0)) throw std::invalid_argument("rescale_T: z must be nonnegative");
  const GridSpec& spec = psi.spec();
  const double ratio = z / spec.step();
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("rescale_T: z must be lattice-aligned");
  }
  const auto k = static_cast<std::size_t>(rounded);
  TwoScaleGrid out(spec);
  for (std::size_t i = 0; i <= spec.n(); ++i) {
    if (i <= k) continue;
    for (std::size_t j = 0; j < i; ++j) {
      out.set(i, j, j >= k ? psi.at(i - k, j - k) : psi.at(i - k, 0));
    }
  }
  return out;
}

}  // namespace branching
