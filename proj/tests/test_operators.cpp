#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "branching/core.hpp"
#include "branching/operators.hpp"
#include "branching/random.hpp"
#include "test_util.hpp"

using namespace branching;

namespace {

constexpr double kStep = 1.0 / 64.0;

SpectrumGrid line(double alpha) {
  return SpectrumGrid::sample(kStep, [&](double t) { return alpha * (1.0 - t); });
}

// Continuous-z maximum of both branches, evaluated with interpolation, as an
// oracle for the lattice maximum (they agree on lattice-aligned z).
double phi_oracle(const TwoScaleGrid& psi, double h, double u, double v) {
  double best = 0.0;
  const double step = psi.spec().step();
  for (double z = 0.0; z <= u + 1e-12; z += step) {
    if (z <= v + 1e-12) best = std::max(best, psi.eval(u - z, std::max(v - z, 0.0)));
    if (z >= v - 1e-12) best = std::max(best, h * (z - v) + psi.eval(u - z, 0.0));
  }
  return best;
}

}  // namespace

TEST(ValidateG, Examples) {
  EXPECT_TRUE(validate_G(line(0.7), 0.7, 1e-12).passed());
  const auto square = SpectrumGrid::sample(kStep, [](double t) { return (1.0 - t) * (1.0 - t); });
  EXPECT_TRUE(validate_G(square, 2.0, 1e-12).has("subadditivity"));
  std::vector<double> shifted(65);
  for (std::size_t k = 0; k < shifted.size(); ++k) shifted[k] = 0.1 + 0.5 * (1.0 - k * kStep);
  EXPECT_TRUE(validate_G(SpectrumGrid(kStep, shifted), 1.0, 1e-12).has("endpoint"));
}

TEST(ValidateGh, Examples) {
  EXPECT_TRUE(validate_Gh(h_kappa_lambda(0.8, 0.5), 1.0, 0.0, 1e-12).passed());
  EXPECT_TRUE(validate_Gh(h_kappa_lambda(0.8, 0.5), 1.0, 0.4, 1e-12).passed());
  const auto half = SpectrumGrid::sample(kStep, [](double t) { return 0.3 * (1.0 - t); });
  EXPECT_TRUE(validate_Gh(half, 1.0, 0.6, 1e-12).has("lower-bound-h"));
  // A bump: Psi rises then falls.
  const auto bump = SpectrumGrid::sample(kStep, [](double t) { return t < 0.5 ? 0.5 : (1.0 - t) * 0.6; });
  EXPECT_TRUE(validate_Gh(bump, 1.0, 0.0, 1e-12).has("ratio-increasing"));
}

TEST(ValidateBh, Examples) {
  const GridSpec spec(6.0, 0.5);
  const auto lin = TwoScaleGrid::sample(spec, [](double u, double v) { return 0.9 * (u - v); });
  EXPECT_TRUE(validate_Bh(lin, 1.0, 0.5, 1e-12).passed());
  const auto clipped = TwoScaleGrid::sample(spec, [](double u, double v) { return std::min(u, 1.0) - std::min(v, 1.0); });
  EXPECT_TRUE(validate_Bh(clipped, 1.0, 0.0, 1e-12).has("diagonal-monotone"));
}

TEST(HKappaLambda, Values) {
  const auto g = h_kappa_lambda(0.8, 0.5);
  EXPECT_NEAR(g.eval(0.25), 0.4, 1e-12);
  EXPECT_NEAR(g.eval(0.75), 0.2, 1e-12);
  for (double x : values_of(h_kappa_lambda(0.9, 1.0))) EXPECT_EQ(x, 0.0);
  Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    EXPECT_TRUE(validate_G(random_hkl_max(rng, 0.0, 1.0, 4, kStep), 1.0, 1e-12).passed());
  }
}

TEST(GammaLimit, Examples) {
  const GridSpec spec(64.0, 0.25);
  const auto lin = TwoScaleGrid::sample(spec, [](double u, double v) { return 0.6 * (u - v); });
  const auto g = gamma_limit(lin, 16.0);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(g[k], 0.6 * (1.0 - g.theta(k)), 1e-12);

  const auto clipped = TwoScaleGrid::sample(spec, [](double u, double v) { return std::min(u, 1.0) - std::min(v, 1.0); });
  for (double x : values_of(gamma_limit(clipped, 16.0))) EXPECT_LE(x, 1.0 / 16.0 + 1e-12);

  const auto target = h_kappa_lambda(0.8, 0.5);
  const auto back = gamma_limit(gamma_inverse(target, spec), 16.0);
  for (std::size_t k = 0; k < back.size(); ++k) EXPECT_NEAR(back[k], target[k], 0.8 * 0.25 / 16.0);
  EXPECT_THROW(gamma_limit(lin, 64.0), std::invalid_argument);
}

TEST(GammaInverse, Examples) {
  const GridSpec spec(8.0, 0.25);
  const auto psi = gamma_inverse(h_kappa_lambda(1.0, 0.5), spec);
  EXPECT_NEAR(psi.eval(4.0, 1.0), 2.0, 1e-12);
  const auto lin = gamma_inverse(line(0.7), spec);
  EXPECT_NEAR(lin.eval(5.0, 2.0), 2.1, 1e-12);
  for (double x : values_of(gamma_inverse(SpectrumGrid(kStep), spec))) EXPECT_EQ(x, 0.0);
  const auto square = SpectrumGrid::sample(kStep, [](double t) { return (1.0 - t) * (1.0 - t); });
  EXPECT_THROW(gamma_inverse(square, spec), std::invalid_argument);
}

TEST(GammaInverse, OutputInBAndMaximal) {
  Rng rng(41);
  const GridSpec spec(16.0, 0.25);
  for (int trial = 0; trial < 20; ++trial) {
    const auto gamma = random_G(rng, 1.0, kStep);
    const auto psi = gamma_inverse(gamma, spec);
    EXPECT_TRUE(validate_B(psi, 1.0, 2.0 * kStep + 1e-9).passed()) << trial;
    // Any lattice element of B(1) below gamma along rays stays below psi.
    const auto beta = random_B(rng, 0.3, spec);
    const auto limit = gamma_limit(beta, 0.25);
    bool below = true;
    for (std::size_t k = 0; k < limit.size(); ++k) below = below && limit[k] <= gamma[k];
    if (!below) continue;
    for (std::size_t i = 0; i <= spec.n(); ++i)
      for (std::size_t j = 0; j <= i; ++j) EXPECT_LE(beta.at(i, j), psi.at(i, j) + 2.0 * kStep * spec.coord(i) + 1e-9);
  }
}

TEST(PsiTransform, Examples) {
  const auto flat = psi_transform(line(0.6));
  for (double x : flat.values()) EXPECT_NEAR(x, 0.6, 1e-12);
  const auto phi = psi_transform(h_kappa_lambda(1.0, 0.5));
  EXPECT_NEAR(phi[0], 0.5, 1e-12);
  EXPECT_NEAR(phi.eval(0.5), 1.0, 1e-12);
  EXPECT_NEAR(phi[phi.last()], 1.0, 1e-12);
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const auto p = psi_transform(random_G(rng, 1.0, kStep));
    EXPECT_EQ(p[p.last()], *std::max_element(p.values().begin(), p.values().end() - 1));
  }
}

TEST(PhiH, Examples) {
  const GridSpec spec(6.0, 0.5);
  const auto zero = phi_h(TwoScaleGrid(spec), 0.5, 1.0);
  for (std::size_t i = 0; i <= spec.n(); ++i)
    for (std::size_t j = 0; j <= i; ++j) EXPECT_NEAR(zero.at(i, j), 0.5 * (spec.coord(i) - spec.coord(j)), 1e-12);
  const auto clipped = TwoScaleGrid::sample(spec, [](double u, double v) { return std::min(u, 1.0) - std::min(v, 1.0); });
  EXPECT_NEAR(phi_h(clipped, 0.0, 1.0).eval(3.0, 2.0), 1.0, 1e-12);
  EXPECT_THROW(phi_h(clipped, 1.5, 1.0), std::invalid_argument);
}

TEST(PhiH, MatchesOracleAndLaws) {
  Rng rng(43);
  const GridSpec spec(8.0, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = random_B(rng, 1.0, spec);
    const double h = 0.1 * (trial % 11);
    const auto out = phi_h(psi, h, 1.0);
    for (std::size_t i = 0; i <= spec.n(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        ASSERT_NEAR(out.at(i, j), phi_oracle(psi, h, spec.coord(i), spec.coord(j)), 1e-12);
        ASSERT_GE(out.at(i, j), psi.at(i, j));
      }
    }
    EXPECT_TRUE(validate_Bh(out, 1.0, h, 1e-9).passed()) << validate_Bh(out, 1.0, h, 1e-9).summary();
    const auto again = phi_h(out, h, 1.0);
    for (std::size_t k = 0; k < out.values().size(); ++k) ASSERT_NEAR(again.values()[k], out.values()[k], 1e-9);
  }
}

TEST(OmegaH, Examples) {
  const auto g = omega_h(h_kappa_lambda(1.0, 0.5), 1.0);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(g[k], 1.0 - g.theta(k), 1e-12);
  for (double x : values_of(omega_h(SpectrumGrid(kStep), 0.0))) EXPECT_EQ(x, 0.0);
  const auto member = h_kappa_lambda(0.7, 0.25);
  const auto same = omega_h(member, 0.5);
  for (std::size_t k = 0; k < same.size(); ++k) EXPECT_NEAR(same[k], member[k], 1e-12);
}

TEST(OmegaH, LawsAndMinimalSpectra) {
  Rng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const auto gamma = random_G(rng, 1.0, kStep);
    const double h = 0.1 * (trial % 11);
    const auto omega = omega_h(gamma, h);
    EXPECT_TRUE(validate_Gh(omega, 1.0, h, 1e-12).passed());
    const auto again = omega_h(omega, h);
    for (std::size_t k = 0; k < omega.size(); ++k) {
      EXPECT_GE(omega[k], gamma[k] - 1e-12);
      EXPECT_NEAR(again[k], omega[k], 1e-12);
    }
    // h_{kappa,lambda} touching omega at lambda stays below it.
    for (std::size_t l = 0; l < omega.last(); l += 4) {
      const double lambda = omega.theta(l);
      const double kappa = omega[l] / (1.0 - lambda);
      const auto minimal = h_kappa_lambda(kappa, lambda);
      for (std::size_t k = 0; k < omega.size(); ++k) EXPECT_LE(minimal[k], omega[k] + 1e-12);
    }
  }
}

TEST(UpperSpectrum, RunningMax) {
  const std::vector<double> raw{0.5, 0.8, 0.6, 0.0, 0.3};
  const auto up = upper_spectrum(AssouadSpectrumGrid(0.25, raw));
  const std::vector<double> expected{0.5, 0.8, 0.8, 0.8, 0.8};
  for (std::size_t k = 0; k < raw.size(); ++k) EXPECT_EQ(up[k], expected[k]);
  const auto inc = AssouadSpectrumGrid::sample(kStep, [](double t) { return 0.2 + 0.5 * t; });
  const auto same = upper_spectrum(inc);
  for (std::size_t k = 0; k < inc.size(); ++k) EXPECT_EQ(same[k], inc[k]);
}

TEST(GammaLimit, OrderPreservingAndDescends) {
  Rng rng(53);
  const GridSpec spec(32.0, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_B(rng, 1.0, spec);
    const auto b = random_B(rng, 1.0, spec);
    const std::vector<TwoScaleGrid> pair{a, b};
    const auto top = sup_closure(pair);
    const auto ga = gamma_limit(a, 8.0);
    const auto gt = gamma_limit(top, 8.0);
    for (std::size_t k = 0; k < ga.size(); ++k) EXPECT_LE(ga[k], gt[k]);
    const double h = 0.1 * (trial % 6);
    const auto projected = phi_h(a, h, 1.0);
    ASSERT_TRUE(validate_Bh(projected, 1.0, h, 1e-9).passed());
    const auto descended = gamma_limit(projected, 8.0);
    // Rays leaving the window at u_max cost a little monotonicity of the ratio.
    EXPECT_TRUE(validate_Gh(descended, 1.0, h - 0.05, 0.01).passed()) << validate_Gh(descended, 1.0, h, 0.01).summary();
  }
}

TEST(VerifyCommuting, Examples) {
  const GridSpec spec(32.0, 0.25);
  const auto zero = verify_commuting(TwoScaleGrid(spec), 0.0, 1.0, 8.0);
  EXPECT_EQ(zero.sup_deviation, 0.0);
  const auto lin = TwoScaleGrid::sample(spec, [](double u, double v) { return 0.8 * (u - v); });
  for (double h : {0.0, 0.4, 0.8}) EXPECT_LE(verify_commuting(lin, h, 0.8, 8.0).sup_deviation, 1e-9);
  Rng rng(59);
  for (int trial = 0; trial < 5; ++trial) {
    const auto psi = gamma_inverse(random_G(rng, 1.0, kStep), spec);
    EXPECT_LE(verify_commuting(psi, 0.5, 1.0, 8.0).sup_deviation, 2.0 * 0.25 + 2.0 / 8.0);
  }
}
