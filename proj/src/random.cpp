#include "branching/random.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "branching/core.hpp"
#include "branching/operators.hpp"

namespace branching {

namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

OneVarPL random_C(Rng& rng, double alpha, double u_max, double step) {
  const auto cells = static_cast<int>(std::llround(u_max / step));
  std::set<int> knots{0};
  const int extra = uniform_int(rng, 0, std::min(6, std::max(cells - 1, 0)));
  for (int k = 0; k < extra; ++k) knots.insert(uniform_int(rng, 1, std::max(cells - 1, 1)));
  std::vector<double> breakpoints;
  std::vector<double> slopes;
  for (int k : knots) {
    breakpoints.push_back(k * step);
    // Flat pieces are common in branching functions; give them real weight.
    slopes.push_back(uniform_int(rng, 0, 3) == 0 ? 0.0 : uniform(rng, 0.0, alpha));
  }
  return OneVarPL(std::move(breakpoints), std::move(slopes));
}

TwoScaleGrid random_B(Rng& rng, double alpha, const GridSpec& spec) {
  const int terms = uniform_int(rng, 1, 4);
  std::vector<TwoScaleGrid> family;
  for (int k = 0; k < terms; ++k) {
    const auto anchor = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(spec.n() / 2)));
    family.push_back(minimal_extension(random_C(rng, alpha, spec.u_max(), spec.step()), spec.coord(anchor), spec));
  }
  const TwoScaleGrid sup = sup_closure(family);
  const double weight = uniform(rng, 0.0, 1.0);
  const double cap = spec.step() * uniform_int(rng, 1, static_cast<int>(spec.n()));
  return TwoScaleGrid::sample(spec, [&](double u, double v) {
    const auto i = spec.aligned_index(u);
    const auto j = spec.aligned_index(v);
    return weight * sup.at(i, j) + (1.0 - weight) * alpha * std::min(u - v, cap);
  });
}

SpectrumGrid random_hkl_max(Rng& rng, double kappa_lo, double kappa_hi, int max_terms, double theta_step) {
  const auto samples = static_cast<int>(std::llround(1.0 / theta_step));
  const int terms = uniform_int(rng, 1, max_terms);
  std::vector<double> values(static_cast<std::size_t>(samples) + 1, 0.0);
  for (int t = 0; t < terms; ++t) {
    const SpectrumGrid term =
        h_kappa_lambda(uniform(rng, kappa_lo, kappa_hi), uniform_int(rng, 0, samples) * theta_step, theta_step);
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = std::max(values[k], term[k]);
  }
  return SpectrumGrid(theta_step, std::move(values));
}

SpectrumGrid random_monotone_spectrum(Rng& rng, double alpha, double h, double theta_step) {
  SpectrumGrid probe(theta_step);
  std::vector<double> values(probe.size(), 0.0);
  values[0] = uniform(rng, h, alpha);
  for (std::size_t k = 0; k + 1 < probe.last(); ++k) {
    const double here = 1.0 - probe.theta(k);
    const double next = 1.0 - probe.theta(k + 1);
    const double lo = values[k] * next / here;
    const double hi = std::min(values[k], alpha * next);
    values[k + 1] = lo >= hi ? hi : uniform(rng, lo, hi);
  }
  values[probe.last()] = 0.0;
  return SpectrumGrid(theta_step, std::move(values));
}

SpectrumGrid random_G(Rng& rng, double alpha, double theta_step) {
  const SpectrumGrid first = random_hkl_max(rng, 0.0, alpha, 4, theta_step);
  const SpectrumGrid second = random_monotone_spectrum(rng, alpha, 0.0, theta_step);
  const double weight = uniform(rng, 0.0, 1.0);
  std::vector<double> values(first.size());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = weight * first[k] + (1.0 - weight) * second[k];
  return SpectrumGrid(theta_step, std::move(values));
}

}  // namespace branching
