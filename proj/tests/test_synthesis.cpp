#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "branching/core.hpp"
#include "branching/operators.hpp"
#include "branching/synthesis.hpp"

using namespace branching;

namespace {

StepFunction steps_from(std::vector<int> units, double alpha_step) { return StepFunction{alpha_step, std::move(units)}; }

}  // namespace

TEST(StepQuantize, Examples) {
  const auto eta = step_quantize(OneVarPL({0.0}, {0.7}), 1.0, 5);
  const std::vector<int> expected{0, 0, 1, 2, 2, 3};
  EXPECT_EQ(eta.units, expected);
  for (int x : step_quantize(OneVarPL(), 1.0, 10).units) EXPECT_EQ(x, 0);
  const auto full = step_quantize(OneVarPL({0.0}, {2.0}), 2.0, 8);
  for (std::size_t n = 0; n <= 8; ++n) EXPECT_EQ(full[n], 2.0 * n);
  EXPECT_THROW(step_quantize(OneVarPL({0.0, 1.0}, {1.0, -0.5}), 1.0, 4), std::invalid_argument);
  EXPECT_THROW(step_quantize(OneVarPL({0.0}, {2.5}), 1.0, 4), std::invalid_argument);
}

TEST(StepQuantize, BoundHoldsForRandomSlopes) {
  for (int k = 1; k <= 50; ++k) {
    const double slope = 0.02 * k;
    const OneVarPL g({0.0, 3.0, 7.0}, {slope, 0.0, slope / 2.0});
    const auto eta = step_quantize(g, 1.0, 30);
    for (std::size_t n = 0; n <= 30; ++n) {
      EXPECT_LT(g(n) - 1.0, eta[n]);
      EXPECT_LE(eta[n], g(n) + 1e-12);
    }
  }
}

TEST(UniformTree, CountsAndShape) {
  std::vector<int> ramp(9);
  for (int n = 0; n <= 8; ++n) ramp[n] = n;
  const auto full = build_uniform_tree(steps_from(ramp, 1.0), 1, 8, 0);
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(full.levels[n].size(), std::size_t{1} << n);

  const auto chain = build_uniform_tree(steps_from(std::vector<int>(9, 0), 1.0), 1, 8, 0);
  for (const auto& level : chain.levels) {
    EXPECT_EQ(level.size(), 1u);
    EXPECT_EQ(level.cell(0)[0], 0u);
  }

  const auto partial = build_uniform_tree(steps_from({0, 1, 1, 2}, 1.0), 1, 3, 0);
  std::size_t inside = 0;
  for (std::size_t k = 0; k < partial.levels[3].size(); ++k) inside += (partial.levels[3].cell(k)[0] >> 2) == 1 ? 1 : 0;
  EXPECT_EQ(inside, 2u);

  EXPECT_THROW(build_uniform_tree(steps_from({0, 2}, 1.0), 1, 1, 0), std::invalid_argument);
  EXPECT_THROW(build_uniform_tree(steps_from({0, 1}, 1.0), 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(build_uniform_tree(steps_from(ramp, 1.0), 1, 8, 0, 100), CapExceeded);
}

TEST(UniformTree, TwoDimensionalCountsAndAddresses) {
  const StepFunction eta = steps_from({0, 0, 1, 1, 2, 3}, 2.0);
  const auto tree = build_uniform_tree(eta, 2, 5, 1);
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(tree.levels[n].size(), std::size_t{1} << (2 * eta.units[n]));
  for (int n = 1; n <= 5; ++n) {
    std::set<std::vector<unsigned>> seen;
    std::set<std::vector<unsigned>> parents;
    for (std::size_t k = 0; k < tree.levels[n - 1].size(); ++k) parents.insert(tree.address(n - 1, k));
    for (std::size_t k = 0; k < tree.levels[n].size(); ++k) {
      auto address = tree.address(n, k);
      for (unsigned digit : address) EXPECT_LT(digit, 4u);
      EXPECT_TRUE(seen.insert(address).second);
      address.pop_back();
      EXPECT_TRUE(parents.count(address));
    }
  }
  // Offset 1: everything sits in [0, 1/2]^2.
  for (std::size_t k = 0; k < tree.levels[5].size(); ++k)
    for (auto c : tree.levels[5].cell(k)) EXPECT_LT(c, 16u);
}

TEST(Assemble, ZeroAndSeparation) {
  const GridSpec spec(12.0, 0.5);
  const auto set = assemble_attainable(TwoScaleGrid(spec), 1, 12);
  for (int level = 0; level <= 15; ++level) EXPECT_LE(set.cells(level).size(), static_cast<std::size_t>(level + 2));
  for (const auto& part : set.parts) EXPECT_EQ(part.tree.levels.back().size(), 1u);

  const auto lin = TwoScaleGrid::sample(spec, [](double u, double v) { return u - v; });
  const auto full = assemble_attainable(lin, 1, 12);
  for (std::size_t a = 0; a < full.parts.size(); ++a) {
    const int b = full.parts[a].offset;
    // Part b spans [2^{2-b}, 2^{2-b} + 2^{-b}]; the next part ends at 2^{1-b} + 2^{-b-1}.
    const double start = std::ldexp(1.0, 2 - b);
    const double next_end = std::ldexp(1.0, 1 - b) + std::ldexp(1.0, -b - 1);
    EXPECT_GT(start - next_end, std::ldexp(1.0, -b - 1));
    EXPECT_EQ(full.parts[a].tree.levels.back().size(), std::size_t{1} << (12 - b));
  }
  EXPECT_THROW(assemble_attainable(TwoScaleGrid::sample(spec, [](double u, double v) { return 1.5 * (u - v); }), 1, 12),
               std::invalid_argument);
  EXPECT_THROW(assemble_attainable(lin, 1, 14), std::invalid_argument);
}

TEST(Export, PointsAreCorners) {
  std::vector<int> ramp(4);
  for (int n = 0; n < 4; ++n) ramp[n] = n;
  const auto tree = build_uniform_tree(steps_from(ramp, 1.0), 1, 3, 0);
  const auto points = export_points(tree, 2);
  ASSERT_EQ(points.size(), 4u);
  const double expected[] = {0.0, 0.25, 0.5, 0.75};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(points[k][0].value(), expected[k]);
  EXPECT_EQ(points[1][0].numerator, 1u);
  EXPECT_EQ(points[1][0].exponent, 2);
  EXPECT_EQ(points[2][0].exponent, 1);
  EXPECT_THROW(export_points(tree, 4), std::invalid_argument);
  const auto chain = build_uniform_tree(steps_from({0, 0, 0}, 1.0), 1, 2, 0);
  EXPECT_EQ(export_points(chain, 2).size(), 1u);
}
