#include "branching/inhomogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>

#include "branching/operators.hpp"

namespace branching {

namespace {

constexpr double kRhoSlack = 1e-9;

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

Box condensation_box(const DyadicSet& set) {
  const CellSet& cells = set.level(set.depth());
  const auto d = static_cast<std::size_t>(set.dimension());
  const double scale = std::ldexp(1.0, -cells.level());
  Box box{std::vector<double>(d, INFINITY), std::vector<double>(d, -INFINITY)};
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto cell = cells.cell(k);
    for (std::size_t c = 0; c < d; ++c) {
      box.lo[c] = std::min(box.lo[c], static_cast<double>(cell[c]) * scale);
      box.hi[c] = std::max(box.hi[c], static_cast<double>(cell[c]) * scale);
    }
  }
  return box;
}

// Composition f_w as a single similarity.
struct Composite {
  double ratio = 1.0;
  std::vector<double> translation;
  double rho = 0.0;
};

Composite extend(const Composite& w, const Similarity& f) {
  Composite out{w.ratio * f.ratio, w.translation, w.rho - std::log2(f.ratio)};
  for (std::size_t c = 0; c < out.translation.size(); ++c) out.translation[c] += w.ratio * f.translation[c];
  return out;
}

Composite compose(const SimilarityIFS& ifs, const Word& w) {
  Composite out{1.0, std::vector<double>(static_cast<std::size_t>(ifs.dimension()), 0.0), 0.0};
  for (std::uint32_t i : w) out = extend(out, ifs.maps().at(i));
  return out;
}

Box image(const Composite& f, const Box& box) {
  Box out = box;
  for (std::size_t c = 0; c < box.lo.size(); ++c) {
    out.lo[c] = f.ratio * box.lo[c] + f.translation[c];
    out.hi[c] = f.ratio * box.hi[c] + f.translation[c];
  }
  return out;
}

double box_distance_sq(const Box& box, const std::vector<double>& x) {
  double sum = 0.0;
  for (std::size_t c = 0; c < x.size(); ++c) {
    const double gap = std::max({0.0, box.lo[c] - x[c], x[c] - box.hi[c]});
    sum += gap * gap;
  }
  return sum;
}

double box_gap(const Box& a, const Box& b) {
  double sum = 0.0;
  for (std::size_t c = 0; c < a.lo.size(); ++c) {
    const double gap = std::max({0.0, a.lo[c] - b.hi[c], b.lo[c] - a.hi[c]});
    sum += gap * gap;
  }
  return std::sqrt(sum);
}

// Breadth-first walk of I*(u); the callback sees each resolution-u word once.
template <class F>
void for_each_resolution_word(const SimilarityIFS& ifs, double u, std::size_t cap, F&& visit) {
  std::deque<std::pair<Word, Composite>> frontier;
  frontier.emplace_back(Word{}, Composite{1.0, std::vector<double>(static_cast<std::size_t>(ifs.dimension()), 0.0), 0.0});
  std::size_t produced = 0;
  while (!frontier.empty()) {
    auto [prefix, f] = std::move(frontier.front());
    frontier.pop_front();
    for (std::uint32_t i = 0; i < ifs.maps().size(); ++i) {
      Word w = prefix;
      w.push_back(i);
      Composite g = extend(f, ifs.maps()[i]);
      if (++produced > cap) throw CapExceeded("word enumeration exceeded " + std::to_string(cap) + " words");
      if (g.rho >= u - kRhoSlack) {
        visit(w, g);
      } else {
        frontier.emplace_back(std::move(w), std::move(g));
      }
    }
  }
}

}  // namespace

SimilarityIFS::SimilarityIFS(int dimension, std::vector<Similarity> maps, bool separated)
    : d_(dimension), maps_(std::move(maps)), separated_(separated) {
  if (d_ < 1) throw std::invalid_argument("SimilarityIFS: dimension must be positive");
  if (maps_.empty()) throw std::invalid_argument("SimilarityIFS: no maps");
  for (const Similarity& f : maps_) {
    if (!(f.ratio > 0.0 && f.ratio < 1.0)) throw std::invalid_argument("SimilarityIFS: ratio outside (0,1)");
    if (f.translation.size() != static_cast<std::size_t>(d_)) {
      throw std::invalid_argument("SimilarityIFS: translation has wrong dimension");
    }
    for (double t : f.translation) {
      if (!(t >= 0.0 && t + f.ratio <= 1.0 + 1e-12)) throw std::invalid_argument("SimilarityIFS: image leaves [0,1]^d");
    }
  }
  if (separated_) {
    const auto d = static_cast<std::size_t>(d_);
    auto cube_image = [&](const Similarity& f) {
      Box b{f.translation, f.translation};
      for (std::size_t c = 0; c < d; ++c) b.hi[c] += f.ratio;
      return b;
    };
    for (std::size_t a = 0; a < maps_.size(); ++a) {
      for (std::size_t b = a + 1; b < maps_.size(); ++b) {
        if (!(box_gap(cube_image(maps_[a]), cube_image(maps_[b])) > 0.0)) {
          throw std::invalid_argument("SimilarityIFS: declared separation fails for maps " + std::to_string(a) +
                                      " and " + std::to_string(b));
        }
      }
    }
  }
}

std::vector<double> SimilarityIFS::fixed_point(std::size_t i) const {
  const Similarity& f = maps_.at(i);
  std::vector<double> x(f.translation);
  for (double& c : x) c /= (1.0 - f.ratio);
  return x;
}

double rho(const SimilarityIFS& ifs, const Word& w) {
  double total = 0.0;
  for (std::uint32_t i : w) {
    if (i >= ifs.maps().size()) throw std::invalid_argument("rho: map index out of range");
    total -= std::log2(ifs.maps()[i].ratio);
  }
  return total;
}

std::vector<Word> words_at_resolution(const SimilarityIFS& ifs, double u, std::size_t cap) {
  if (!(u > 0.0)) throw std::invalid_argument("words_at_resolution: u must be positive");
  std::vector<Word> words;
  for_each_resolution_word(ifs, u, cap, [&](const Word& w, const Composite&) { words.push_back(w); });
  return words;
}

double critical_exponent(const SimilarityIFS& ifs, CountingMethod method) {
  if (!(method.resolution > 0.0)) throw std::invalid_argument("critical_exponent: resolution must be positive");
  std::vector<double> rhos;
  for (const Similarity& f : ifs.maps()) rhos.push_back(-std::log2(f.ratio));
  std::map<double, double> memo;
  auto count = [&](auto&& self, double s) -> double {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    double total = 0.0;
    for (double r : rhos) total += r >= s - kRhoSlack ? 1.0 : self(self, s - r);
    memo.emplace(s, total);
    return total;
  };
  return std::log2(count(count, method.resolution)) / method.resolution;
}

double critical_exponent(const SimilarityIFS& ifs, MoranMethod method) {
  if (!(method.tolerance > 0.0)) throw std::invalid_argument("critical_exponent: tolerance must be positive");
  auto excess = [&](double h) {
    double sum = 0.0;
    for (const Similarity& f : ifs.maps()) sum += std::pow(f.ratio, h);
    return sum - 1.0;
  };
  if (excess(0.0) == 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (excess(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  if (excess(hi) == 0.0) return hi;
  while (hi - lo > method.tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double e = excess(mid);
    if (e == 0.0) return mid;
    (e > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

AttractorSample generate_attractor(const SimilarityIFS& ifs, const DyadicSet& condensation, double depth,
                                   std::size_t cap) {
  if (condensation.dimension() != ifs.dimension()) throw std::invalid_argument("generate_attractor: dimension mismatch");
  if (!(depth >= 0.0)) throw std::invalid_argument("generate_attractor: depth must be nonnegative");
  const int level = static_cast<int>(std::floor(depth + kRhoSlack));
  if (level > kMaxLevel) throw std::invalid_argument("generate_attractor: depth too large");
  const auto d = static_cast<std::size_t>(ifs.dimension());

  const CellSet& given = condensation.level(condensation.depth());
  const int base_level = given.level();
  const double base_limit = std::ldexp(1.0, base_level);
  std::vector<std::uint64_t> base(given.flat().begin(), given.flat().end());
  for (std::size_t i = 0; i < ifs.maps().size(); ++i) {
    for (double x : ifs.fixed_point(i)) {
      base.push_back(static_cast<std::uint64_t>(std::clamp(std::floor(x * base_limit), 0.0, base_limit - 1.0)));
    }
  }
  const DyadicSet augmented(CellSet(ifs.dimension(), base_level, std::move(base)));
  AttractorSample sample{augmented, depth, 0, ifs.maps().size()};

  const double limit = std::ldexp(1.0, level);
  std::vector<std::uint64_t> out;
  std::deque<Composite> frontier{Composite{1.0, std::vector<double>(d, 0.0), 0.0}};
  while (!frontier.empty()) {
    Composite f = std::move(frontier.front());
    frontier.pop_front();
    if (++sample.words_used > cap) throw CapExceeded("generate_attractor: more than " + std::to_string(cap) + " words");
    const int k = std::clamp(level - static_cast<int>(std::ceil(f.rho - kRhoSlack)), 0, base_level);
    const CellSet& source = augmented.level(k);
    const double scale = std::ldexp(1.0, -k);
    for (std::size_t n = 0; n < source.size(); ++n) {
      const auto cell = source.cell(n);
      for (std::size_t c = 0; c < d; ++c) {
        const double y = f.ratio * static_cast<double>(cell[c]) * scale + f.translation[c];
        out.push_back(static_cast<std::uint64_t>(std::clamp(std::floor(y * limit), 0.0, limit - 1.0)));
      }
    }
    for (const Similarity& map : ifs.maps()) {
      Composite g = extend(f, map);
      if (g.rho <= depth + kRhoSlack) frontier.push_back(std::move(g));
    }
  }
  sample.cells = DyadicSet(CellSet(ifs.dimension(), level, std::move(out)));
  return sample;
}

std::size_t cylinder_hits(const SimilarityIFS& ifs, const DyadicSet& condensation, double v, double z,
                          const std::vector<double>& x, std::size_t cap) {
  if (!(v >= 0.0) || !(z >= 0.0)) throw std::invalid_argument("cylinder_hits: scales must be nonnegative");
  if (x.size() != static_cast<std::size_t>(ifs.dimension())) throw std::invalid_argument("cylinder_hits: bad point");
  const Box box = condensation_box(condensation);
  const double radius = std::exp2(-v);
  const double radius_sq = radius * radius * (1.0 + 1e-12);
  std::size_t hits = 0;
  auto visit = [&](const Word&, const Composite& f) {
    if (box_distance_sq(image(f, box), x) <= radius_sq) ++hits;
  };
  if (z > 0.0) {
    for_each_resolution_word(ifs, z, cap, visit);
  } else {
    visit(Word{}, compose(ifs, Word{}));
  }
  return hits;
}

std::vector<Word> separated_subfamily(const SimilarityIFS& ifs, const DyadicSet& condensation,
                                      const std::vector<Word>& words, double u) {
  const Box box = condensation_box(condensation);
  const double radius = std::exp2(1.0 - u);
  std::vector<Box> images;
  images.reserve(words.size());
  for (const Word& w : words) images.push_back(image(compose(ifs, w), box));
  std::vector<bool> removed(words.size(), false);
  std::vector<Word> kept;
  for (std::size_t a = 0; a < words.size(); ++a) {
    if (removed[a]) continue;
    kept.push_back(words[a]);
    const std::vector<double>& anchor = images[a].lo;
    for (std::size_t b = a; b < words.size(); ++b) {
      if (!removed[b] && box_distance_sq(images[b], anchor) <= radius * radius) removed[b] = true;
    }
  }
  return kept;
}

InDimReport verify_in_dim(const SimilarityIFS& ifs, const DyadicSet& condensation, const TwoScaleGrid& psi_condensation,
                          double depth, double alpha) {
  const GridSpec& spec = psi_condensation.spec();
  if (spec.u_max() > std::floor(depth + kRhoSlack) - 1.0 + 1e-9) {
    throw std::invalid_argument("verify_in_dim: grid must stop one level below the generation depth");
  }
  const AttractorSample sample = generate_attractor(ifs, condensation, depth);
  InDimReport report{critical_exponent(ifs, MoranMethod{1e-12}), 0.0, 0.0, 0.0, 0.0,
                     empirical_beta(sample.cells, spec), TwoScaleGrid(spec)};
  report.prediction = phi_h(psi_condensation, report.h, alpha);
  for (std::size_t i = 1; i <= spec.n(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double raw = std::abs(report.beta.grid.at(i, j) - report.prediction.at(i, j));
      const double normalized = raw / std::max(1.0, spec.coord(i));
      report.max_raw = std::max(report.max_raw, raw);
      if (normalized > report.max_normalized) {
        report.max_normalized = normalized;
        report.witness_u = spec.coord(i);
        report.witness_v = spec.coord(j);
      }
    }
  }
  return report;
}

OneVarPL lower_box_profile(const OneVarPL& g_condensation, double h, double u_max, double step) {
  if (!(h >= 0.0)) throw std::invalid_argument("lower_box_profile: h must be nonnegative");
  if (!(step > 0.0) || !(u_max >= step)) throw std::invalid_argument("lower_box_profile: bad lattice");
  const auto n = static_cast<std::size_t>(std::llround(u_max / step));
  std::vector<double> samples(n + 1);
  double best = -INFINITY;
  for (std::size_t k = 0; k <= n; ++k) {
    const double z = static_cast<double>(k) * step;
    best = std::max(best, g_condensation(z) - h * z);
    samples[k] = h * z + best;
  }
  samples[0] = 0.0;
  return OneVarPL::from_samples(step, samples);
}

Interval dimension_range(double h, double s, double t, double alpha) {
  if (!(0.0 <= s && s <= t && t <= alpha) || !(0.0 <= h && h <= alpha)) {
    throw std::invalid_argument("dimension_range: need 0 <= s <= t <= alpha and 0 <= h <= alpha");
  }
  if (t <= h) return {h, h};
  return {std::max(h, s), h + (t - h) * (alpha - h) * s / (alpha * t - h * s)};
}

}  // namespace branching
