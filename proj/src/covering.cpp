#include "branching/covering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "branching/operators.hpp"

namespace branching {

namespace {

using Wide = unsigned __int128;

int stored_level(const DyadicSet& set, int u) {
  if (u < 0 || u > set.max_resolution()) {
    throw std::domain_error("covering: resolution " + std::to_string(u) + " beyond materialized depth");
  }
  return u + set.rescale_exponent();
}

Wide morton(std::span<const std::uint64_t> cell, int level) {
  Wide key = 0;
  for (int bit = level - 1; bit >= 0; --bit) {
    for (std::uint64_t c : cell) key = (key << 1) | static_cast<Wide>((c >> bit) & 1U);
  }
  return key;
}

// Counts level-`level` cells of the set inside a closed Euclidean ball, descending
// through Morton-ordered keys so that fully covered subtrees are counted by range.
class BallCounter {
 public:
  explicit BallCounter(const CellSet& cells) : cells_(cells), d_(cells.dimension()), level_(cells.level()) {
    if (static_cast<long>(d_) * level_ > 127) throw std::domain_error("covering: d * level exceeds key width");
    keys_.reserve(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) keys_.push_back(morton(cells.cell(k), level_));
    std::sort(keys_.begin(), keys_.end());
  }

  std::size_t count(std::span<const std::uint64_t> center, int radius_level) {
    center_ = center;
    const int s = level_ - radius_level;
    radius_sq_ = static_cast<Wide>(1) << (2 * s);
    if (d_ == 1) return count_interval(center[0], std::uint64_t{1} << s);
    std::size_t total = 0;
    // The ball meets at most the 4^d level-`radius_level` cells around the center's parent.
    std::vector<std::uint64_t> node(static_cast<std::size_t>(d_));
    const std::uint64_t limit = std::uint64_t{1} << radius_level;
    std::vector<int> offset(static_cast<std::size_t>(d_), -2);
    for (;;) {
      bool valid = true;
      for (int c = 0; c < d_; ++c) {
        const auto parent = static_cast<std::int64_t>(center[c] >> s) + offset[c];
        if (parent < 0 || static_cast<std::uint64_t>(parent) >= limit) valid = false;
        node[c] = static_cast<std::uint64_t>(parent);
      }
      if (valid) total += descend(node, radius_level);
      int c = 0;
      while (c < d_ && ++offset[c] > 1) offset[c++] = -2;
      if (c == d_) break;
    }
    return total;
  }

 private:
  std::size_t count_interval(std::uint64_t x, std::uint64_t radius) {
    const std::uint64_t lo = x >= radius + 1 ? x - radius - 1 : 0;
    const std::uint64_t hi = x + radius;
    const auto first = std::lower_bound(keys_.begin(), keys_.end(), static_cast<Wide>(lo));
    const auto last = std::upper_bound(keys_.begin(), keys_.end(), static_cast<Wide>(hi));
    return last > first ? static_cast<std::size_t>(last - first) : 0;
  }

  std::size_t descend(std::vector<std::uint64_t>& node, int level) {
    const int shift = level_ - level;
    const Wide prefix = morton(node, level);
    const int tail = d_ * shift;
    const Wide lo_key = prefix << tail;
    const Wide hi_key = lo_key + (static_cast<Wide>(1) << tail);
    const auto first = std::lower_bound(keys_.begin(), keys_.end(), lo_key);
    const auto last = std::lower_bound(first, keys_.end(), hi_key);
    if (first == last) return 0;
    Wide near = 0;
    Wide far = 0;
    for (int c = 0; c < d_; ++c) {
      const Wide lo = static_cast<Wide>(node[c]) << shift;
      const Wide hi = lo + (static_cast<Wide>(1) << shift);
      const Wide x = center_[c];
      const Wide gap = x < lo ? lo - x : (x > hi ? x - hi : 0);
      const Wide spread = std::max(x > lo ? x - lo : lo - x, x > hi ? x - hi : hi - x);
      near += gap * gap;
      far += spread * spread;
    }
    if (near > radius_sq_) return 0;
    if (far <= radius_sq_ || shift == 0) return static_cast<std::size_t>(last - first);
    std::size_t total = 0;
    std::vector<std::uint64_t> child(node.size());
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << d_); ++bits) {
      for (int c = 0; c < d_; ++c) child[c] = 2 * node[c] + ((bits >> (d_ - 1 - c)) & 1U);
      total += descend(child, level + 1);
    }
    return total;
  }

  const CellSet& cells_;
  int d_;
  int level_;
  std::vector<Wide> keys_;
  std::span<const std::uint64_t> center_;
  Wide radius_sq_ = 0;
};

std::size_t stride_for(std::size_t cells) { return cells <= kCenterLimit ? 1 : (cells + kCenterLimit - 1) / kCenterLimit; }

}  // namespace

std::size_t cell_count(const DyadicSet& set, int u) { return set.level(stored_level(set, u)).size(); }

OneVarPL average_branching(const DyadicSet& set) {
  std::vector<double> samples;
  for (int u = 0; u <= set.max_resolution(); ++u) samples.push_back(std::log2(static_cast<double>(cell_count(set, u))));
  samples[0] = 0.0;
  return OneVarPL::from_samples(1.0, samples);
}

LocalCount local_covering(const DyadicSet& set, int u, int v) {
  if (v < 0 || v > u) throw std::domain_error("local_covering: need 0 <= v <= u");
  const CellSet& cells = set.level(stored_level(set, u));
  const int radius_level = stored_level(set, v);
  BallCounter counter(cells);
  LocalCount result;
  result.center_stride = stride_for(cells.size());
  for (std::size_t k = 0; k < cells.size(); k += result.center_stride) {
    result.count = std::max(result.count, counter.count(cells.cell(k), radius_level));
  }
  return result;
}

CoverageGrid empirical_beta(const DyadicSet& set, const GridSpec& spec) {
  const auto top = static_cast<int>(std::ceil(spec.u_max() - 1e-9));
  if (top > set.max_resolution()) throw std::domain_error("empirical_beta: grid extends beyond materialized depth");
  const GridSpec integer_spec(top, 1.0);
  TwoScaleGrid integer_grid(integer_spec);
  CoverageGrid out{TwoScaleGrid(spec), set.depth(), 1, set.rescale_exponent()};
  for (int u = 1; u <= top; ++u) {
    const CellSet& cells = set.level(stored_level(set, u));
    BallCounter counter(cells);
    const std::size_t stride = stride_for(cells.size());
    out.center_stride = std::max(out.center_stride, stride);
    for (int v = 0; v < u; ++v) {
      const int radius_level = stored_level(set, v);
      std::size_t best = 0;
      for (std::size_t k = 0; k < cells.size(); k += stride) best = std::max(best, counter.count(cells.cell(k), radius_level));
      const double value = std::log2(static_cast<double>(best));
      const auto i = static_cast<std::size_t>(u);
      const auto j = static_cast<std::size_t>(v);
      // Covering numbers grow with the resolution; cell counts near the ball
      // boundary need not, so take the running max in u.
      const double below = j < i - 1 ? integer_grid.at(i - 1, j) : 0.0;
      integer_grid.set(i, j, std::max(value, below));
    }
  }
  out.grid = TwoScaleGrid::sample(spec, [&](double u, double v) { return integer_grid.eval(u, v); });
  return out;
}

BoxDims box_dims(const OneVarPL& g, double step, double u_lo, double u_hi) {
  if (!(step > 0.0)) throw std::invalid_argument("box_dims: step must be positive");
  const auto first = static_cast<long>(std::ceil(std::max(u_lo, step) / step - 1e-9));
  const auto last = static_cast<long>(std::floor(u_hi / step + 1e-9));
  if (!(u_lo < u_hi) || first > last) throw std::invalid_argument("box_dims: empty window");
  BoxDims dims{INFINITY, 0.0};
  for (long k = first; k <= last; ++k) {
    const double u = static_cast<double>(k) * step;
    const double ratio = g(u) / u;
    dims.lower = std::min(dims.lower, ratio);
    dims.upper = std::max(dims.upper, ratio);
  }
  return dims;
}

SpectrumEstimate spectrum_estimate(const CoverageGrid& beta, double u_min, double theta_step) {
  return {psi_transform(gamma_limit(beta.grid, u_min, theta_step)), u_min, beta.grid.spec().u_max()};
}

}  // namespace branching
