#include "branching/dyadic.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace branching {

namespace {

void sort_unique(std::vector<std::uint64_t>& coords, std::size_t d) {
  const std::size_t count = coords.size() / d;
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(coords.begin() + a * d, coords.begin() + (a + 1) * d, coords.begin() + b * d,
                                        coords.begin() + (b + 1) * d);
  };
  auto same = [&](std::size_t a, std::size_t b) {
    return std::equal(coords.begin() + a * d, coords.begin() + (a + 1) * d, coords.begin() + b * d);
  };
  std::sort(order.begin(), order.end(), less);
  std::vector<std::uint64_t> out;
  out.reserve(coords.size());
  for (std::size_t k = 0; k < count; ++k) {
    if (k > 0 && same(order[k], order[k - 1])) continue;
    out.insert(out.end(), coords.begin() + order[k] * d, coords.begin() + (order[k] + 1) * d);
  }
  coords = std::move(out);
}

}  // namespace

CellSet::CellSet(int dimension, int level) : d_(dimension), level_(level) {
  if (dimension < 1) throw std::invalid_argument("CellSet: dimension must be positive");
  if (level < 0 || level > kMaxLevel) throw std::invalid_argument("CellSet: level out of range");
}

CellSet::CellSet(int dimension, int level, std::vector<std::uint64_t> flat_coords)
    : CellSet(dimension, level) {
  const auto d = static_cast<std::size_t>(dimension);
  if (flat_coords.size() % d != 0) throw std::invalid_argument("CellSet: coordinate count not a multiple of d");
  const std::uint64_t limit = std::uint64_t{1} << level;
  for (std::uint64_t c : flat_coords) {
    if (c >= limit) throw std::invalid_argument("CellSet: coordinate outside [0, 2^level)");
  }
  coords_ = std::move(flat_coords);
  sort_unique(coords_, d);
}

CellSet CellSet::coarsen(int level) const {
  if (level > level_ || level < 0) throw std::invalid_argument("CellSet::coarsen: target must be coarser");
  const int shift = level_ - level;
  std::vector<std::uint64_t> parents(coords_.size());
  for (std::size_t k = 0; k < coords_.size(); ++k) parents[k] = coords_[k] >> shift;
  return CellSet(d_, level, std::move(parents));
}

DyadicSet::DyadicSet(CellSet finest, int rescale_exponent) : rescale_exponent_(rescale_exponent) {
  if (finest.empty()) throw std::invalid_argument("DyadicSet: empty set");
  const int depth = finest.level();
  levels_.reserve(static_cast<std::size_t>(depth) + 1);
  std::vector<CellSet> reversed{std::move(finest)};
  for (int n = depth - 1; n >= 0; --n) reversed.push_back(reversed.back().coarsen(n));
  levels_.assign(std::make_move_iterator(reversed.rbegin()), std::make_move_iterator(reversed.rend()));
}

DyadicSet::DyadicSet(std::vector<CellSet> levels, int rescale_exponent)
    : levels_(std::move(levels)), rescale_exponent_(rescale_exponent) {
  if (levels_.empty() || levels_.back().empty()) throw std::invalid_argument("DyadicSet: empty set");
  for (std::size_t n = 0; n < levels_.size(); ++n) {
    if (levels_[n].level() != static_cast<int>(n)) throw std::invalid_argument("DyadicSet: level index mismatch");
  }
}

const CellSet& DyadicSet::level(int n) const {
  if (n < 0 || n > depth()) throw std::domain_error("DyadicSet: level " + std::to_string(n) + " not materialized");
  return levels_[static_cast<std::size_t>(n)];
}

}  // namespace branching
