#include "branching/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "branching/core.hpp"

namespace branching {

namespace {

void check_spectrum_basics(ValidationReport& report, const SpectrumGrid& gamma, double alpha, double tol) {
  const std::size_t m = gamma.last();
  if (std::abs(gamma[m]) > tol) report.add("endpoint", {1.0}, std::abs(gamma[m]) - tol);
  for (std::size_t k = 0; k < m; ++k) {
    const double rise = gamma[k + 1] - gamma[k];
    if (rise > tol) report.add("decreasing", {gamma.theta(k + 1)}, rise - tol);
    const double slope_excess = std::abs(rise) - alpha * (gamma.theta(k + 1) - gamma.theta(k)) - tol;
    if (slope_excess > 0.0) report.add("lipschitz", {gamma.theta(k + 1)}, slope_excess);
  }
}

}  // namespace

double lipschitz_constant(const SpectrumGrid& gamma) {
  double best = 0.0;
  for (std::size_t k = 0; k < gamma.last(); ++k) {
    best = std::max(best, std::abs(gamma[k + 1] - gamma[k]) / (gamma.theta(k + 1) - gamma.theta(k)));
  }
  return best;
}

ValidationReport validate_G(const SpectrumGrid& gamma, double alpha, double tol) {
  ValidationReport report;
  check_spectrum_basics(report, gamma, alpha, tol);
  std::size_t recorded = 0;
  for (std::size_t a = 0; a < gamma.size(); ++a) {
    const double lambda = gamma.theta(a);
    for (std::size_t b = 0; b < gamma.size(); ++b) {
      const double theta = gamma.theta(b);
      const double excess = gamma.eval(lambda * theta) - gamma[b] - theta * gamma[a] - tol;
      if (excess > 0.0 && recorded++ < 64) report.add("subadditivity", {theta, lambda}, excess);
    }
  }
  return report;
}

ValidationReport validate_Gh(const SpectrumGrid& gamma, double alpha, double h, double tol) {
  ValidationReport report;
  check_spectrum_basics(report, gamma, alpha, tol);
  if (gamma[0] < h - tol) report.add("lower-bound-h", {0.0}, h - tol - gamma[0]);
  double running = 0.0;
  for (std::size_t k = 0; k < gamma.last(); ++k) {
    const double ratio = gamma[k] / (1.0 - gamma.theta(k));
    if (ratio < running - tol) report.add("ratio-increasing", {gamma.theta(k)}, running - tol - ratio);
    running = std::max(running, ratio);
  }
  return report;
}

ValidationReport validate_Bh(const TwoScaleGrid& psi, double alpha, double h, double tol) {
  ValidationReport report = validate_B(psi, alpha, tol);
  const GridSpec& spec = psi.spec();
  const std::size_t n = spec.n();
  std::size_t recorded = 0;
  // Each diagonal (fixed i - j) must be increasing.
  for (std::size_t offset = 1; offset <= n; ++offset) {
    double running = 0.0;
    for (std::size_t j = 0; j + offset <= n; ++j) {
      const double x = psi.at(j + offset, j);
      if (x < running - tol && recorded++ < 64) {
        report.add("diagonal-monotone", {spec.coord(j + offset), spec.coord(j)}, running - tol - x);
      }
      running = std::max(running, x);
    }
  }
  double running = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double shifted = psi.at(i, 0) - h * spec.coord(i);
    if (shifted < running - tol) report.add("lower-h-growth", {spec.coord(i), 0.0}, running - tol - shifted);
    running = std::max(running, shifted);
  }
  return report;
}

SpectrumGrid gamma_limit(const TwoScaleGrid& psi, double u_min, double theta_step) {
  const GridSpec& spec = psi.spec();
  if (!(u_min > 0.0) || !(u_min < spec.u_max())) {
    throw std::invalid_argument("gamma_limit: need 0 < u_min < u_max");
  }
  SpectrumGrid probe(theta_step);
  std::vector<double> values(probe.size(), 0.0);
  const auto first = static_cast<std::size_t>(std::ceil(u_min / spec.step() - 1e-9));
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double theta = probe.theta(k);
    double best = 0.0;
    for (std::size_t i = first; i <= spec.n(); ++i) {
      const double u = spec.coord(i);
      best = std::max(best, psi.eval(u, theta * u) / u);
    }
    values[k] = best;
  }
  return SpectrumGrid(theta_step, std::move(values));
}

TwoScaleGrid gamma_inverse(const SpectrumGrid& gamma, const GridSpec& spec) {
  const double alpha = lipschitz_constant(gamma);
  const auto report = validate_G(gamma, alpha, 1e-9 + 2.0 * gamma.theta_step() * alpha);
  if (!report.passed()) throw std::invalid_argument("gamma_inverse: spectrum not in G: " + report.summary(3));
  return TwoScaleGrid::sample(spec, [&](double u, double v) { return u * gamma.eval(v / u); });
}

AssouadSpectrumGrid psi_transform(const SpectrumGrid& gamma) {
  std::vector<double> values(gamma.size());
  double sup = 0.0;
  for (std::size_t k = 0; k < gamma.last(); ++k) {
    values[k] = gamma[k] / (1.0 - gamma.theta(k));
    sup = std::max(sup, values[k]);
  }
  values[gamma.last()] = sup;
  return AssouadSpectrumGrid(gamma.theta_step(), std::move(values));
}

TwoScaleGrid phi_h(const TwoScaleGrid& psi, double h, double alpha) {
  if (!(h >= 0.0) || !(h <= alpha)) throw std::invalid_argument("phi_h: need 0 <= h <= alpha");
  const GridSpec& spec = psi.spec();
  const std::size_t n = spec.n();
  TwoScaleGrid out(spec);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double best = 0.0;
      for (std::size_t z = 0; z <= j; ++z) best = std::max(best, psi.at(i - z, j - z));
      for (std::size_t z = j; z <= i; ++z) {
        best = std::max(best, h * spec.coord(z - j) + psi.at(i - z, 0));
      }
      out.set(i, j, best);
    }
  }
  return out;
}

SpectrumGrid omega_h(const SpectrumGrid& gamma, double h) {
  if (!(h >= 0.0)) throw std::invalid_argument("omega_h: h must be nonnegative");
  std::vector<double> values(gamma.size(), 0.0);
  double running = h;
  for (std::size_t k = 0; k < gamma.last(); ++k) {
    const double one_minus = 1.0 - gamma.theta(k);
    running = std::max(running, gamma[k] / one_minus);
    values[k] = one_minus * running;
  }
  return SpectrumGrid(gamma.theta_step(), std::move(values));
}

SpectrumGrid h_kappa_lambda(double kappa, double lambda, double theta_step) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("h_kappa_lambda: kappa must be >= 0");
  if (!(lambda >= 0.0) || !(lambda <= 1.0)) throw std::invalid_argument("h_kappa_lambda: lambda must be in [0,1]");
  return SpectrumGrid::sample(theta_step, [&](double theta) { return kappa * (1.0 - std::max(theta, lambda)); });
}

AssouadSpectrumGrid upper_spectrum(const AssouadSpectrumGrid& phi) {
  std::vector<double> values(phi.size());
  double running = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    running = std::max(running, phi[k]);
    values[k] = running;
  }
  return AssouadSpectrumGrid(phi.theta_step(), std::move(values));
}

DeviationReport verify_commuting(const TwoScaleGrid& psi, double h, double alpha, double u_min, double theta_step) {
  const SpectrumGrid lhs = gamma_limit(phi_h(psi, h, alpha), u_min, theta_step);
  const SpectrumGrid rhs = omega_h(gamma_limit(psi, u_min, theta_step), h);
  DeviationReport report;
  report.window_lo = u_min;
  report.window_hi = psi.spec().u_max();
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    const double dev = std::abs(lhs[k] - rhs[k]);
    if (dev > report.sup_deviation) {
      report.sup_deviation = dev;
      report.witness_theta = lhs.theta(k);
    }
  }
  return report;
}

}  // namespace branching
