#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "branching/core.hpp"
#include "branching/covering.hpp"
#include "branching/operators.hpp"
#include "branching/synthesis.hpp"

using namespace branching;

namespace {

DyadicSet full_interval(int depth) {
  std::vector<std::uint64_t> coords;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << depth); ++c) coords.push_back(c);
  return DyadicSet(CellSet(1, depth, coords));
}

DyadicSet single_point(int d, int depth) {
  return DyadicSet(CellSet(d, depth, std::vector<std::uint64_t>(static_cast<std::size_t>(d), 0)));
}

// Every center, every cell, exact squared distances in doubles (small levels only).
std::size_t brute_local(const CellSet& cells, int radius_level) {
  const double r = std::ldexp(1.0, cells.level() - radius_level);
  std::size_t best = 0;
  for (std::size_t a = 0; a < cells.size(); ++a) {
    std::size_t count = 0;
    for (std::size_t b = 0; b < cells.size(); ++b) {
      double sum = 0.0;
      for (int c = 0; c < cells.dimension(); ++c) {
        const double x = static_cast<double>(cells.cell(a)[c]);
        const double lo = static_cast<double>(cells.cell(b)[c]);
        const double gap = std::max({0.0, lo - x, x - lo - 1.0});
        sum += gap * gap;
      }
      if (sum <= r * r) ++count;
    }
    best = std::max(best, count);
  }
  return best;
}

}  // namespace

TEST(CellCount, Examples) {
  const DyadicSet line = full_interval(6);
  EXPECT_EQ(cell_count(line, 3), 8u);
  for (int u = 0; u <= 6; ++u) EXPECT_EQ(cell_count(single_point(2, 6), u), 1u);
  EXPECT_THROW(cell_count(line, 7), std::domain_error);
  const OneVarPL g = average_branching(line);
  EXPECT_NEAR(g(5.0), 5.0, 1e-12);
}

TEST(LocalCovering, MatchesBruteForceInTwoDimensions) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int level = 5;
    std::vector<std::uint64_t> coords;
    std::bernoulli_distribution keep(0.1 + 0.04 * trial);
    for (std::uint64_t x = 0; x < 32; ++x)
      for (std::uint64_t y = 0; y < 32; ++y)
        if (keep(rng)) coords.insert(coords.end(), {x, y});
    if (coords.empty()) continue;
    const DyadicSet set(CellSet(2, level, coords));
    for (int u = 0; u <= level; ++u) {
      for (int v = 0; v <= u; ++v) {
        ASSERT_EQ(local_covering(set, u, v).count, brute_local(set.level(u), v)) << trial << " " << u << " " << v;
      }
    }
  }
}

TEST(LocalCovering, MatchesBruteForceInOneDimension) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::uint64_t> coords;
    std::bernoulli_distribution keep(0.05 + 0.04 * trial);
    for (std::uint64_t x = 0; x < 256; ++x)
      if (keep(rng)) coords.push_back(x);
    if (coords.empty()) continue;
    const DyadicSet set(CellSet(1, 8, coords));
    for (int u = 0; u <= 8; ++u)
      for (int v = 0; v <= u; ++v) ASSERT_EQ(local_covering(set, u, v).count, brute_local(set.level(u), v));
  }
}

TEST(LocalCovering, Examples) {
  const DyadicSet line = full_interval(10);
  for (int u = 0; u <= 10; ++u) {
    // A closed ball of one cell radius about a corner touches up to four cells.
    EXPECT_EQ(local_covering(line, u, u).count, std::min<std::size_t>(4, std::size_t{1} << u));
    for (int v = 0; v <= u; ++v) {
      const double beta = std::log2(static_cast<double>(local_covering(line, u, v).count));
      EXPECT_NEAR(beta, u - v, 2.0);
    }
  }
}

TEST(EmpiricalBeta, FullIntervalAndPoint) {
  const DyadicSet line = full_interval(12);
  const auto beta = empirical_beta(line, GridSpec(12.0, 0.5));
  EXPECT_TRUE(validate_B(beta.grid, kUnbounded, 3.0).passed());
  for (std::size_t i = 0; i <= beta.grid.spec().n(); ++i)
    for (std::size_t j = 0; j <= i; ++j) EXPECT_NEAR(beta.grid.at(i, j), 0.5 * (i - j), 3.0);
  // Ball diameter is twice the cell side, so counts sit between 2^{u-v} and 2^{u-v+2}.
  for (std::size_t i = 0; i <= beta.grid.spec().n(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      EXPECT_GE(beta.grid.at(i, j), 0.5 * (i - j) - 1e-9);
      EXPECT_LE(beta.grid.at(i, j), 0.5 * (i - j) + 2.0);
    }
  const auto spectrum = spectrum_estimate(beta, 4.0, 1.0 / 16.0);
  EXPECT_NEAR(spectrum.spectrum[0], 1.0, 1e-12);
  for (double x : spectrum.spectrum.values()) EXPECT_GE(x, 1.0 - 1e-9);

  const auto point = empirical_beta(single_point(1, 12), GridSpec(12.0, 1.0));
  for (double x : point.grid.values()) EXPECT_LE(x, 1.0);
  EXPECT_THROW(empirical_beta(line, GridSpec(13.0, 1.0)), std::domain_error);
}

TEST(EmpiricalBeta, CompositeSetMembership) {
  const GridSpec spec(14.0, 0.5);
  const auto psi = gamma_inverse(h_kappa_lambda(0.8, 0.5), spec);
  const DyadicSet set = assemble_attainable(psi, 1, 14).as_set();
  EXPECT_EQ(set.rescale_exponent(), 3);
  const auto beta = empirical_beta(set, GridSpec(13.0, 1.0));
  EXPECT_TRUE(validate_B(beta.grid, kUnbounded, 3.0).passed());
  for (int u = 0; u < 13; ++u) EXPECT_LE(cell_count(set, u), cell_count(set, u + 1));
}

TEST(BoxDims, Examples) {
  const auto linear = box_dims(OneVarPL({0.0}, {0.6}), 1.0, 1.0, 100.0);
  EXPECT_NEAR(linear.lower, 0.6, 1e-12);
  EXPECT_NEAR(linear.upper, 0.6, 1e-12);
  const auto zero = box_dims(OneVarPL(), 1.0, 1.0, 10.0);
  EXPECT_EQ(zero.lower, 0.0);
  EXPECT_EQ(zero.upper, 0.0);

  // Slope 1 on [4^k, 2*4^k], slope 0 on [2*4^k, 4^{k+1}].
  std::vector<double> breakpoints{0.0, 1.0};
  std::vector<double> slopes{0.0, 1.0};
  for (int k = 0; k < 8; ++k) {
    breakpoints.push_back(2.0 * std::pow(4.0, k));
    slopes.push_back(0.0);
    breakpoints.push_back(std::pow(4.0, k + 1));
    slopes.push_back(1.0);
  }
  const OneVarPL g(breakpoints, slopes);
  EXPECT_NEAR(g(std::pow(2.0, 9)), (std::pow(4.0, 5) - 1.0) / 3.0, 1e-9);
  const auto osc = box_dims(g, 1.0, 256.0, 16384.0);
  EXPECT_NEAR(osc.lower, 1.0 / 3.0, 0.01);
  EXPECT_NEAR(osc.upper, 2.0 / 3.0, 0.01);
  EXPECT_THROW(box_dims(g, 1.0, 10.0, 5.0), std::invalid_argument);
}
