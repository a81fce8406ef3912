#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "branching/core.hpp"
#include "branching/inhomogeneous.hpp"

using namespace branching;

namespace {

SimilarityIFS two_maps(double r0, double r1, bool separated) {
  return SimilarityIFS(1, {{r0, {0.0}}, {r1, {1.0 - r1}}}, separated);
}

DyadicSet origin(int level = 10) { return DyadicSet(CellSet(1, level, std::vector<std::uint64_t>{0})); }

DyadicSet full_interval(int level) {
  std::vector<std::uint64_t> coords;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << level); ++c) coords.push_back(c);
  return DyadicSet(CellSet(1, level, coords));
}

}  // namespace

TEST(IFS, ConstructionChecks) {
  EXPECT_NO_THROW(two_maps(0.25, 0.25, true));
  EXPECT_THROW(two_maps(0.5, 0.5, true), std::invalid_argument);
  EXPECT_NO_THROW(two_maps(0.5, 0.5, false));
  EXPECT_THROW(SimilarityIFS(1, {{1.0, {0.0}}}, false), std::invalid_argument);
  EXPECT_THROW(SimilarityIFS(1, {{0.5, {0.75}}}, false), std::invalid_argument);
  EXPECT_THROW(SimilarityIFS(1, {}, false), std::invalid_argument);
}

TEST(Rho, ValuesAndAdditivity) {
  const auto ifs = two_maps(0.5, 0.25, false);
  EXPECT_EQ(rho(ifs, {}), 0.0);
  EXPECT_EQ(rho(ifs, {0, 1}), 3.0);
  EXPECT_THROW(rho(ifs, {2}), std::invalid_argument);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint32_t> letter(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    Word a(trial % 7), b(trial % 5);
    for (auto& x : a) x = letter(rng);
    for (auto& x : b) x = letter(rng);
    Word ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    EXPECT_EQ(rho(ifs, ab), rho(ifs, a) + rho(ifs, b));
  }
}

TEST(WordsAtResolution, ExamplesAndPrefixUniqueness) {
  const auto binary = two_maps(0.5, 0.5, false);
  const auto two = words_at_resolution(binary, 2.0);
  ASSERT_EQ(two.size(), 4u);
  for (const Word& w : two) EXPECT_EQ(w.size(), 2u);
  EXPECT_EQ(words_at_resolution(binary, 0.5).size(), 2u);

  const auto mixed = two_maps(0.5, 0.25, false);
  const auto family = words_at_resolution(mixed, 7.0);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint32_t> letter(0, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    Word w(12);
    for (auto& x : w) x = letter(rng);
    int prefixes = 0;
    for (const Word& v : family) prefixes += (v.size() <= w.size() && std::equal(v.begin(), v.end(), w.begin())) ? 1 : 0;
    EXPECT_EQ(prefixes, 1);
  }
  for (const Word& w : family) {
    EXPECT_GE(rho(mixed, w), 7.0);
    EXPECT_LT(rho(mixed, Word(w.begin(), w.end() - 1)), 7.0);
  }
  EXPECT_THROW(words_at_resolution(binary, 30.0, 1000), CapExceeded);
}

TEST(CriticalExponent, MoranAndCounting) {
  EXPECT_EQ(critical_exponent(two_maps(0.5, 0.5, false), MoranMethod{1e-12}), 1.0);
  EXPECT_EQ(critical_exponent(two_maps(0.25, 0.25, true), MoranMethod{1e-12}), 0.5);
  const double golden = std::log2(2.0 / (std::sqrt(5.0) - 1.0));
  EXPECT_NEAR(critical_exponent(two_maps(0.5, 0.25, false), MoranMethod{1e-12}), golden, 1e-10);
  EXPECT_NEAR(golden, 0.6942, 1e-4);
  EXPECT_NEAR(critical_exponent(two_maps(0.5, 0.5, false), CountingMethod{24.0}), 1.0, 1e-12);
  EXPECT_NEAR(critical_exponent(two_maps(0.25, 0.25, true), CountingMethod{24.0}), 0.5, 0.02);
  EXPECT_NEAR(critical_exponent(two_maps(0.5, 0.25, false), CountingMethod{24.0}), golden, 0.02);
  // Counting agrees with explicit enumeration.
  const auto mixed = two_maps(0.5, 0.25, false);
  EXPECT_NEAR(critical_exponent(mixed, CountingMethod{9.0}),
              std::log2(static_cast<double>(words_at_resolution(mixed, 9.0).size())) / 9.0, 1e-12);
}

TEST(Attractor, BinaryFromOrigin) {
  const auto binary = two_maps(0.5, 0.5, false);
  const auto sample = generate_attractor(binary, origin(), 12.0);
  EXPECT_EQ(sample.fixed_points_added, 2u);
  for (int u = 0; u <= 12; ++u) EXPECT_EQ(cell_count(sample.cells, u), std::size_t{1} << u);
  const auto shallow = generate_attractor(binary, origin(), 8.0);
  EXPECT_LE(cell_count(shallow.cells, 8), cell_count(sample.cells, 8));
  EXPECT_THROW(generate_attractor(binary, origin(), 30.0, 1000), CapExceeded);
}

TEST(Attractor, SingleContractionCollapses) {
  const SimilarityIFS half(1, {{0.5, {0.0}}}, false);
  const auto sample = generate_attractor(half, origin(), 10.0);
  for (int u = 0; u <= 10; ++u) EXPECT_EQ(cell_count(sample.cells, u), 1u);
}

TEST(Attractor, CantorCounts) {
  const auto cantor = two_maps(0.25, 0.25, true);
  const auto sample = generate_attractor(cantor, origin(), 16.0);
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(cell_count(sample.cells, 2 * k), std::size_t{1} << k);
}

TEST(CylinderHits, Bounds) {
  const auto binary = two_maps(0.5, 0.5, false);
  const DyadicSet line = full_interval(10);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> where(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double v = 2.0 + trial % 5;
    const double z = v + 2.0 + trial % 6;
    const double x = where(rng);
    const auto hits = static_cast<double>(cylinder_hits(binary, line, v, z, {x}));
    EXPECT_LE(std::abs(std::log2(hits) - (z - v)), 3.0);
  }
  EXPECT_EQ(cylinder_hits(binary, line, 3.0, 6.0, {3.0}), 0u);
  const auto cantor = two_maps(0.25, 0.25, true);
  const DyadicSet point = origin();
  std::size_t worst = 0;
  for (double v : {4.0, 8.0, 12.0, 16.0}) worst = std::max(worst, cylinder_hits(cantor, point, v, v - 2.0, {0.0}));
  EXPECT_LE(worst, 4u);
}

TEST(SeparatedSubfamily, Examples) {
  const auto binary = two_maps(0.5, 0.5, false);
  const DyadicSet line = full_interval(10);
  const std::vector<Word> one{{0, 1}};
  EXPECT_EQ(separated_subfamily(binary, line, one, 2.0), one);
  const auto words = words_at_resolution(binary, 8.0);
  const auto kept = separated_subfamily(binary, line, words, 8.0);
  EXPECT_LE(std::abs(std::log2(static_cast<double>(words.size()) / static_cast<double>(kept.size()))), 3.0);
  const auto cantor = two_maps(0.25, 0.25, true);
  const auto spread = words_at_resolution(cantor, 4.0);
  EXPECT_EQ(separated_subfamily(cantor, origin(), spread, 4.0).size(), spread.size());
}

TEST(LowerBoxProfile, Examples) {
  const OneVarPL capped({0.0, 5.0}, {0.8});
  const auto g = lower_box_profile(capped, 0.5, 10.0, 0.25);
  EXPECT_NEAR(g(10.0), 6.5, 1e-9);
  const auto same = lower_box_profile(capped, 0.0, 10.0, 0.25);
  for (double u = 0.0; u <= 10.0; u += 0.25) EXPECT_NEAR(same(u), capped(u), 1e-12);
  const auto linear = lower_box_profile(OneVarPL(), 0.3, 10.0, 0.25);
  for (double u = 0.0; u <= 10.0; u += 0.25) EXPECT_NEAR(linear(u), 0.3 * u, 1e-12);
}

TEST(DimensionRange, Examples) {
  const Interval single = dimension_range(0.6, 0.2, 0.5, 1.0);
  EXPECT_TRUE(single.degenerate());
  EXPECT_EQ(single.lo, 0.6);
  const Interval range = dimension_range(0.25, 0.25, 0.75, 1.0);
  EXPECT_EQ(range.lo, 0.25);
  EXPECT_NEAR(range.hi, 0.25 + 0.09375 / 0.6875, 1e-12);
  EXPECT_TRUE(range.contains(0.3));
  EXPECT_FALSE(range.contains(0.4));
  const Interval collapsed = dimension_range(0.3, 0.0, 0.8, 1.0);
  EXPECT_EQ(collapsed.lo, 0.3);
  EXPECT_EQ(collapsed.hi, 0.3);
  EXPECT_THROW(dimension_range(0.3, 0.6, 0.5, 1.0), std::invalid_argument);
  EXPECT_THROW(dimension_range(1.3, 0.1, 0.5, 1.0), std::invalid_argument);
}

TEST(VerifyInDim, FullIntervalCondensation) {
  const auto cantor = two_maps(0.25, 0.25, true);
  const GridSpec spec(11.0, 1.0);
  const auto psi = TwoScaleGrid::sample(spec, [](double u, double v) { return u - v; });
  const auto report = verify_in_dim(cantor, full_interval(12), psi, 12.0, 1.0);
  EXPECT_EQ(report.h, 0.5);
  for (std::size_t k = 0; k < psi.values().size(); ++k) EXPECT_EQ(report.prediction.values()[k], psi.values()[k]);
  EXPECT_LE(report.max_raw, 2.0);
}
