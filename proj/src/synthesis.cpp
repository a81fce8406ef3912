#include "branching/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "branching/core.hpp"

namespace branching {

StepFunction step_quantize(const OneVarPL& g, double alpha_step, std::size_t depth) {
  if (!(alpha_step > 0.0)) throw std::invalid_argument("step_quantize: alpha_step must be positive");
  if (g.min_slope() < 0.0) throw std::invalid_argument("step_quantize: g is decreasing somewhere");
  constexpr double kSlack = 1e-12;
  StepFunction eta{alpha_step, std::vector<int>(depth + 1, 0)};
  for (std::size_t n = 0; n < depth; ++n) {
    const double next = g(static_cast<double>(n + 1));
    eta.units[n + 1] = eta.units[n] + (next - eta[n] >= alpha_step - kSlack ? 1 : 0);
  }
  for (std::size_t n = 0; n <= depth; ++n) {
    const double gn = g(static_cast<double>(n));
    if (!(gn - alpha_step < eta[n] && eta[n] <= gn + kSlack)) {
      throw std::invalid_argument("step_quantize: g grows faster than alpha_step near n = " + std::to_string(n));
    }
  }
  return eta;
}

std::vector<unsigned> DyadicTree::address(int n, std::size_t k) const {
  const auto cell = levels.at(static_cast<std::size_t>(n)).cell(k);
  std::vector<unsigned> digits(static_cast<std::size_t>(n));
  for (int l = 1; l <= n; ++l) {
    unsigned digit = 0;
    for (int c = 0; c < dimension; ++c) digit |= static_cast<unsigned>((cell[c] >> (n - l)) & 1U) << c;
    digits[static_cast<std::size_t>(l - 1)] = digit;
  }
  return digits;
}

DyadicTree build_uniform_tree(const StepFunction& eta, int d, int depth, int offset, std::size_t cap) {
  if (d < 1) throw std::invalid_argument("build_uniform_tree: d must be positive");
  if (depth < 0 || depth > kMaxLevel) throw std::invalid_argument("build_uniform_tree: depth out of range");
  if (eta.depth() < static_cast<std::size_t>(depth)) throw std::invalid_argument("build_uniform_tree: eta too short");
  if (std::abs(eta.alpha_step - d) > 1e-12) throw std::invalid_argument("build_uniform_tree: eta must step by d");
  for (int n = 0; n <= std::min(offset, depth); ++n) {
    if (eta.units[static_cast<std::size_t>(n)] != 0) {
      throw std::invalid_argument("build_uniform_tree: eta must vanish up to the offset");
    }
  }
  const auto dd = static_cast<std::size_t>(d);
  DyadicTree tree;
  tree.dimension = d;
  tree.levels.emplace_back(d, 0, std::vector<std::uint64_t>(dd, 0));
  for (int n = 0; n < depth; ++n) {
    const int increment = eta.units[static_cast<std::size_t>(n + 1)] - eta.units[static_cast<std::size_t>(n)];
    if (increment != 0 && increment != 1) throw std::invalid_argument("build_uniform_tree: increment not in {0, d}");
    const CellSet& current = tree.levels.back();
    const std::size_t children = increment == 0 ? 1 : (std::size_t{1} << d);
    if (current.size() * children > cap) {
      throw CapExceeded("build_uniform_tree: more than " + std::to_string(cap) + " cubes at level " +
                        std::to_string(n + 1));
    }
    std::vector<std::uint64_t> next;
    next.reserve(current.size() * children * dd);
    for (std::size_t k = 0; k < current.size(); ++k) {
      const auto parent = current.cell(k);
      for (std::size_t child = 0; child < children; ++child) {
        for (std::size_t c = 0; c < dd; ++c) next.push_back(2 * parent[c] + ((child >> c) & 1U));
      }
    }
    tree.levels.emplace_back(d, n + 1, std::move(next));
  }
  return tree;
}

CellSet CompositeDyadicSet::cells(int level) const {
  if (level < 0 || level > depth + kCompositeRescale) {
    throw std::invalid_argument("CompositeDyadicSet: level beyond depth");
  }
  const auto dd = static_cast<std::size_t>(dimension);
  std::vector<std::uint64_t> coords(dd, 0);
  for (const Part& part : parts) {
    // Part b occupies stored levels shifted by 3; its translate is 2^{2-b} / 8.
    const int tree_level = level - kCompositeRescale;
    const int shift = tree_level < 0 ? -tree_level : 0;
    const CellSet& source = part.tree.levels.at(static_cast<std::size_t>(std::max(tree_level, 0)));
    const int translate_exp = level - 1 - part.offset;
    const std::uint64_t translate = translate_exp >= 0 ? (std::uint64_t{1} << translate_exp) : 0;
    if (translate_exp < 0) continue;
    for (std::size_t k = 0; k < source.size(); ++k) {
      const auto cell = source.cell(k);
      for (std::size_t c = 0; c < dd; ++c) {
        const std::uint64_t local = cell[c] >> shift;
        coords.push_back(c == 0 ? local + translate : local);
      }
    }
  }
  return CellSet(dimension, level, std::move(coords));
}

DyadicSet CompositeDyadicSet::as_set() const {
  return DyadicSet(cells(depth + kCompositeRescale), kCompositeRescale);
}

CompositeDyadicSet assemble_attainable(const TwoScaleGrid& psi, int d, int depth, std::size_t cap) {
  if (d < 1) throw std::invalid_argument("assemble_attainable: d must be positive");
  if (depth < 1 || depth + kCompositeRescale > kMaxLevel) {
    throw std::invalid_argument("assemble_attainable: depth out of range");
  }
  const GridSpec& spec = psi.spec();
  if (spec.u_max() < depth - 1e-9) throw std::invalid_argument("assemble_attainable: psi grid shorter than depth");
  double alpha = 0.0;
  for (std::size_t i = 1; i <= spec.n(); ++i) {
    for (std::size_t j = 0; j < i; ++j) alpha = std::max(alpha, psi.at(i, j) / (spec.coord(i) - spec.coord(j)));
  }
  if (alpha > d + 1e-9) throw std::invalid_argument("assemble_attainable: Lipschitz bound of psi exceeds d");
  const auto report = validate_B(psi, kUnbounded, 1e-9 + alpha * spec.step());
  if (!report.passed()) throw std::invalid_argument("assemble_attainable: psi not in B: " + report.summary(3));

  CompositeDyadicSet set;
  set.dimension = d;
  set.depth = depth;
  std::size_t total = 0;
  for (int b = 0; b < depth; ++b) {
    std::vector<double> samples(static_cast<std::size_t>(depth) + 1, 0.0);
    for (int n = b + 1; n <= depth; ++n) samples[static_cast<std::size_t>(n)] = psi.eval(n, b);
    // Interpolation error can leave tiny dips; g^b must be increasing.
    for (std::size_t n = 1; n < samples.size(); ++n) samples[n] = std::max(samples[n], samples[n - 1]);
    const StepFunction eta = step_quantize(OneVarPL::from_samples(1.0, samples), d, static_cast<std::size_t>(depth));
    DyadicTree tree = build_uniform_tree(eta, d, depth, b, cap);
    total += tree.levels.back().size();
    if (total > cap) throw CapExceeded("assemble_attainable: more than " + std::to_string(cap) + " cubes");
    set.parts.push_back({b, std::move(tree)});
  }
  return set;
}

double DyadicRational::value() const { return std::ldexp(static_cast<double>(numerator), -exponent); }

std::vector<std::vector<DyadicRational>> export_points(const CellSet& cells) {
  std::vector<std::vector<DyadicRational>> points;
  points.reserve(cells.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    std::vector<DyadicRational> point;
    for (std::uint64_t c : cells.cell(k)) {
      const int strip = c == 0 ? cells.level() : std::min(cells.level(), std::countr_zero(c));
      point.push_back({c >> strip, cells.level() - strip});
    }
    points.push_back(std::move(point));
  }
  return points;
}

std::vector<std::vector<DyadicRational>> export_points(const DyadicTree& tree, int level) {
  if (level < 0 || level > tree.depth()) throw std::invalid_argument("export_points: level beyond depth");
  return export_points(tree.levels[static_cast<std::size_t>(level)]);
}

std::vector<std::vector<DyadicRational>> export_points(const CompositeDyadicSet& set, int level) {
  return export_points(set.cells(level));
}

}  // namespace branching
