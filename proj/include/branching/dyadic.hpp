#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace branching {

/// Raised when a construction would materialize more cubes or words than allowed.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultCubeCap = std::size_t{1} << 22;
inline constexpr int kMaxLevel = 60;

/// Occupied dyadic cells of one level in [0,1]^d. A cell is stored by its integer
/// lower-corner coordinates; the collection is sorted lexicographically, unique.
class CellSet {
 public:
  CellSet(int dimension, int level);
  /// Sorts and deduplicates. Coordinates must lie in [0, 2^level).
  CellSet(int dimension, int level, std::vector<std::uint64_t> flat_coords);

  int dimension() const { return d_; }
  int level() const { return level_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(d_); }
  bool empty() const { return coords_.empty(); }
  std::span<const std::uint64_t> cell(std::size_t k) const {
    return {coords_.data() + k * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
  }
  std::span<const std::uint64_t> flat() const { return coords_; }

  /// Parent cells at a coarser level.
  CellSet coarsen(int level) const;

 private:
  int d_;
  int level_;
  std::vector<std::uint64_t> coords_;
};

/// Level-indexed dyadic cells of one compact set, levels 0..depth. `rescale_exponent`
/// e records that the stored set is the original scaled by 2^{-e}, so original
/// resolution u corresponds to stored level u + e.
class DyadicSet {
 public:
  /// Builds every coarser level from the finest one.
  explicit DyadicSet(CellSet finest, int rescale_exponent = 0);
  /// Takes explicit levels 0..depth; each must be the parent set of the next.
  DyadicSet(std::vector<CellSet> levels, int rescale_exponent);

  int dimension() const { return levels_.front().dimension(); }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  int rescale_exponent() const { return rescale_exponent_; }
  /// Largest original-units resolution available.
  int max_resolution() const { return depth() - rescale_exponent_; }
  const CellSet& level(int n) const;

 private:
  std::vector<CellSet> levels_;
  int rescale_exponent_;
};

}  // namespace branching
