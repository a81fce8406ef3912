#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "branching/dyadic.hpp"
#include "branching/grid.hpp"
#include "branching/inhomogeneous.hpp"
#include "branching/one_var.hpp"
#include "branching/spectrum.hpp"
#include "branching/synthesis.hpp"

namespace branching {

/// Malformed file contents. The message names the offending line where possible.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes to a sibling temporary and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_text(const std::filesystem::path& path);

/// Shortest round-trip decimal form.
std::string format_double(double x);

// `u,v,value`, every lattice point including the diagonal, lexicographic in (u,v).
std::string grid_to_csv(const TwoScaleGrid& grid);
TwoScaleGrid grid_from_csv(std::string_view text);

// `breakpoint,slope`. A trailing constant piece is written as slope 0.
std::string pl_to_csv(const OneVarPL& g);
OneVarPL pl_from_csv(std::string_view text);

// `theta,value`.
std::string spectrum_to_csv(const SpectrumGrid& spectrum);
SpectrumGrid spectrum_from_csv(std::string_view text);

struct PointMetadata {
  int dimension = 1;
  int depth = 0;  // stored level of the cells
  int rescale_exponent = 0;
};

/// `coord_0_num,coord_0_exp,...`; point value is num / 2^exp.
std::string points_to_csv(const std::vector<std::vector<DyadicRational>>& points, int dimension);
std::string metadata_to_json(const PointMetadata& meta);
PointMetadata metadata_from_json(std::string_view text);
/// Cells of level meta.depth containing the listed corners.
DyadicSet points_from_csv(std::string_view text, const PointMetadata& meta);
/// `points.csv` -> `points.json`.
std::filesystem::path metadata_path(const std::filesystem::path& points_path);

/// One `level <n> <count>` header per level, then one address per line: base-2^d
/// digits separated by dots, `-` for the root. A first line `tree d=<d> rescale=<e>`
/// carries the dimension and rescale exponent.
std::string tree_to_text(const DyadicSet& set);
DyadicSet tree_from_text(std::string_view text);

struct IfsFile {
  SimilarityIFS ifs;
  std::string condensation;
};

/// {"d":1, "maps":[{"ratio_exp":2, "translation":[0.0]}, ...], "condensation":"point"}.
/// Strong separation is required of every map family read from file.
IfsFile ifs_from_json(std::string_view text);

}  // namespace branching
