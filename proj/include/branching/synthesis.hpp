#pragma once

#include <cstdint>
#include <vector>

#include "branching/dyadic.hpp"
#include "branching/grid.hpp"
#include "branching/one_var.hpp"

namespace branching {

/// eta(n) = alpha_step * units[n], with units[0] = 0 and each increment 0 or 1.
struct StepFunction {
  double alpha_step = 1.0;
  std::vector<int> units;

  std::size_t depth() const { return units.empty() ? 0 : units.size() - 1; }
  double operator[](std::size_t n) const { return alpha_step * units.at(n); }
};

/// Inductive quantizer on the integers 0..depth. Throws std::invalid_argument if g
/// decreases or the bound g(n) - alpha_step < eta(n) <= g(n) fails.
StepFunction step_quantize(const OneVarPL& g, double alpha_step, std::size_t depth);

/// Subdivision tree in [0,1]^d. levels[n] holds the occupied level-n cubes.
struct DyadicTree {
  int dimension = 1;
  std::vector<CellSet> levels;

  int depth() const { return static_cast<int>(levels.size()) - 1; }
  /// Child indices from the root to cube k of level n; bit c of a digit is the
  /// lower/upper half choice along coordinate c.
  std::vector<unsigned> address(int n, std::size_t k) const;
  DyadicSet as_set() const { return DyadicSet(levels, 0); }
};

/// Keeps only the all-zero child where eta does not grow and all 2^d children
/// where it grows by d. Throws std::invalid_argument for other increments or a
/// nonzero eta before `offset`, CapExceeded past `cap` cubes.
DyadicTree build_uniform_tree(const StepFunction& eta, int d, int depth, int offset,
                              std::size_t cap = kDefaultCubeCap);

inline constexpr int kCompositeRescale = 3;

/// Union of the origin and the parts E_b, part b translated by 2^{2-b} along the
/// first axis. Stored coordinates are divided by 8 to fit [0,1]^d.
struct CompositeDyadicSet {
  struct Part {
    int offset;
    DyadicTree tree;
  };
  int dimension = 1;
  int depth = 0;
  std::vector<Part> parts;

  /// Cells of the rescaled set at stored level `level` (0..depth + 3).
  CellSet cells(int level) const;
  DyadicSet as_set() const;
};

/// Builds the composite set whose branching function follows psi up to a
/// logarithmic error. Requires psi.spec().u_max() >= depth and a Lipschitz bound of
/// psi at most d.
CompositeDyadicSet assemble_attainable(const TwoScaleGrid& psi, int d, int depth,
                                       std::size_t cap = kDefaultCubeCap);

struct DyadicRational {
  std::uint64_t numerator;
  int exponent;
  double value() const;
};

/// One lower-left corner per cube, lexicographic order, reduced fractions.
std::vector<std::vector<DyadicRational>> export_points(const CellSet& cells);
std::vector<std::vector<DyadicRational>> export_points(const DyadicTree& tree, int level);
std::vector<std::vector<DyadicRational>> export_points(const CompositeDyadicSet& set, int level);

}  // namespace branching
