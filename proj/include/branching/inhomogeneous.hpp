#pragma once

#include <cstdint>
#include <vector>

#include "branching/covering.hpp"
#include "branching/dyadic.hpp"
#include "branching/grid.hpp"
#include "branching/one_var.hpp"

namespace branching {

inline constexpr std::size_t kDefaultWordCap = 2'000'000;

/// x -> ratio * x + translation.
struct Similarity {
  double ratio;
  std::vector<double> translation;
};

class SimilarityIFS {
 public:
  /// Throws std::invalid_argument for ratios outside (0,1), images leaving
  /// [0,1]^d, or a declared separation that does not hold.
  SimilarityIFS(int dimension, std::vector<Similarity> maps, bool separated);

  int dimension() const { return d_; }
  const std::vector<Similarity>& maps() const { return maps_; }
  bool separated() const { return separated_; }
  std::vector<double> fixed_point(std::size_t i) const;

 private:
  int d_;
  std::vector<Similarity> maps_;
  bool separated_;
};

using Word = std::vector<std::uint32_t>;

double rho(const SimilarityIFS& ifs, const Word& w);

/// Words with rho(w minus its last letter) < u <= rho(w), breadth-first order.
std::vector<Word> words_at_resolution(const SimilarityIFS& ifs, double u, std::size_t cap = kDefaultWordCap);

struct CountingMethod {
  double resolution;
};
struct MoranMethod {
  double tolerance;
};

/// log2 #I*(U) / U.
double critical_exponent(const SimilarityIFS& ifs, CountingMethod method);
/// Root of sum r_i^h = 1 by bisection.
double critical_exponent(const SimilarityIFS& ifs, MoranMethod method);

struct AttractorSample {
  DyadicSet cells;
  double depth;
  std::size_t words_used;
  std::size_t fixed_points_added;
};

/// Union of f_w(F) over words with rho(w) <= depth, quantized to level floor(depth).
/// The fixed points of the maps are added to F first.
AttractorSample generate_attractor(const SimilarityIFS& ifs, const DyadicSet& condensation, double depth,
                                   std::size_t cap = kDefaultWordCap);

/// Number of words w in I*(z) whose image bounding box f_w(box F) meets the closed
/// ball B(x, 2^{-v}).
std::size_t cylinder_hits(const SimilarityIFS& ifs, const DyadicSet& condensation, double v, double z,
                          const std::vector<double>& x, std::size_t cap = kDefaultWordCap);

/// Greedy selection: keep a word, drop every remaining word whose image box meets
/// the ball of radius 2^{1-u} about the image of F's first point.
std::vector<Word> separated_subfamily(const SimilarityIFS& ifs, const DyadicSet& condensation,
                                      const std::vector<Word>& words, double u);

struct InDimReport {
  double h = 0.0;
  double max_normalized = 0.0;
  double max_raw = 0.0;
  double witness_u = 0.0;
  double witness_v = 0.0;
  CoverageGrid beta;
  TwoScaleGrid prediction;
};

/// Compares the empirical branching function of the attractor with phi_h(psi_F).
InDimReport verify_in_dim(const SimilarityIFS& ifs, const DyadicSet& condensation, const TwoScaleGrid& psi_condensation,
                          double depth, double alpha);

/// sup over lattice z <= u of g_F(z) + h (u - z), on {0, step, ..., u_max}.
OneVarPL lower_box_profile(const OneVarPL& g_condensation, double h, double u_max, double step);

struct Interval {
  double lo;
  double hi;
  bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
  bool degenerate() const { return lo == hi; }
};

/// Attainable lower box dimensions of the attractor given h, the box dimensions
/// s <= t of F and the Lipschitz bound alpha.
Interval dimension_range(double h, double s, double t, double alpha);

}  // namespace branching
