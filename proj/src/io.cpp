#include "branching/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace branching {

namespace {

using nlohmann::json;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) return parts;
    start = end + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Non-empty lines, trimmed.
std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::string_view line : split(text, '\n')) {
    line = trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

template <class T>
T parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  T out{};
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  if (ec != std::errc() || end != field.data() + field.size()) {
    throw FormatError("line " + std::to_string(line) + ": cannot parse '" + std::string(field) + "'");
  }
  return out;
}

// Rows of a CSV with a fixed header; line numbers are 1-based and count the header.
std::vector<std::vector<double>> numeric_rows(std::string_view text, std::string_view header) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != header) {
    throw FormatError("expected header '" + std::string(header) + "'");
  }
  const std::size_t width = split(header, ',').size();
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto fields = split(lines[k], ',');
    if (fields.size() != width) throw FormatError("line " + std::to_string(k + 1) + ": wrong number of fields");
    std::vector<double> row;
    for (std::string_view f : fields) row.push_back(parse_number<double>(f, k + 1));
    rows.push_back(std::move(row));
  }
  return rows;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

std::string address_of(std::span<const std::uint64_t> cell, int level) {
  if (level == 0) return "-";
  std::string out;
  for (int t = 1; t <= level; ++t) {
    unsigned digit = 0;
    for (std::size_t c = 0; c < cell.size(); ++c) digit |= static_cast<unsigned>((cell[c] >> (level - t)) & 1u) << c;
    if (t > 1) out += '.';
    out += std::to_string(digit);
  }
  return out;
}

}  // namespace

void write_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string format_double(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

std::string grid_to_csv(const TwoScaleGrid& grid) {
  const GridSpec& spec = grid.spec();
  std::string out = "u,v,value\n";
  for (std::size_t i = 0; i <= spec.n(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      out += format_double(spec.coord(i)) + ',' + format_double(spec.coord(j)) + ',' + format_double(grid.at(i, j)) + '\n';
    }
  }
  return out;
}

TwoScaleGrid grid_from_csv(std::string_view text) {
  const auto rows = numeric_rows(text, "u,v,value");
  if (rows.size() < 3) throw FormatError("grid needs at least one step");
  const double step = rows[1][0];
  const double u_max = rows.back()[0];
  GridSpec spec;
  try {
    spec = GridSpec(u_max, step);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("grid spec not recoverable: ") + e.what());
  }
  if (rows.size() != spec.point_count()) throw FormatError("row count does not match a full lattice");
  std::vector<double> values(spec.point_count());
  std::size_t r = 0;
  for (std::size_t i = 0; i <= spec.n(); ++i) {
    for (std::size_t j = 0; j <= i; ++j, ++r) {
      if (!close(rows[r][0], spec.coord(i)) || !close(rows[r][1], spec.coord(j))) {
        throw FormatError("line " + std::to_string(r + 2) + ": rows out of lattice order");
      }
      values[spec.index(i, j)] = rows[r][2];
    }
  }
  try {
    return TwoScaleGrid(spec, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::string pl_to_csv(const OneVarPL& g) {
  std::string out = "breakpoint,slope\n";
  const auto& bps = g.breakpoints();
  const auto& slopes = g.slopes();
  for (std::size_t k = 0; k < bps.size(); ++k) {
    out += format_double(bps[k]) + ',' + format_double(k < slopes.size() ? slopes[k] : 0.0) + '\n';
  }
  return out;
}

OneVarPL pl_from_csv(std::string_view text) {
  std::vector<double> bps, slopes;
  for (const auto& row : numeric_rows(text, "breakpoint,slope")) {
    bps.push_back(row[0]);
    slopes.push_back(row[1]);
  }
  try {
    return OneVarPL(std::move(bps), std::move(slopes));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::string spectrum_to_csv(const SpectrumGrid& spectrum) {
  std::string out = "theta,value\n";
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    out += format_double(spectrum.theta(k)) + ',' + format_double(spectrum[k]) + '\n';
  }
  return out;
}

SpectrumGrid spectrum_from_csv(std::string_view text) {
  const auto rows = numeric_rows(text, "theta,value");
  if (rows.size() < 2 || !close(rows.front()[0], 0.0) || !close(rows.back()[0], 1.0)) {
    throw FormatError("spectrum must run from theta = 0 to theta = 1");
  }
  const double step = 1.0 / static_cast<double>(rows.size() - 1);
  std::vector<double> values;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!close(rows[k][0], static_cast<double>(k) * step)) {
      throw FormatError("line " + std::to_string(k + 2) + ": theta values are not uniform");
    }
    values.push_back(rows[k][1]);
  }
  try {
    return SpectrumGrid(step, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::string points_to_csv(const std::vector<std::vector<DyadicRational>>& points, int dimension) {
  std::string out;
  for (int c = 0; c < dimension; ++c) {
    if (c) out += ',';
    out += "coord_" + std::to_string(c) + "_num,coord_" + std::to_string(c) + "_exp";
  }
  out += '\n';
  for (const auto& point : points) {
    if (point.size() != static_cast<std::size_t>(dimension)) throw std::invalid_argument("points_to_csv: dimension mismatch");
    for (std::size_t c = 0; c < point.size(); ++c) {
      if (c) out += ',';
      out += std::to_string(point[c].numerator) + ',' + std::to_string(point[c].exponent);
    }
    out += '\n';
  }
  return out;
}

std::string metadata_to_json(const PointMetadata& meta) {
  const json j = {{"d", meta.dimension}, {"depth", meta.depth}, {"rescale_exponent", meta.rescale_exponent}};
  return j.dump(2) + '\n';
}

PointMetadata metadata_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    PointMetadata meta{j.at("d").get<int>(), j.at("depth").get<int>(), j.value("rescale_exponent", 0)};
    if (meta.dimension < 1 || meta.depth < 0 || meta.depth > kMaxLevel || meta.rescale_exponent < 0) {
      throw FormatError("metadata out of range");
    }
    return meta;
  } catch (const json::exception& e) {
    throw FormatError(std::string("metadata: ") + e.what());
  }
}

DyadicSet points_from_csv(std::string_view text, const PointMetadata& meta) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw FormatError("empty point file");
  const auto width = static_cast<std::size_t>(2 * meta.dimension);
  if (split(lines.front(), ',').size() != width) throw FormatError("header does not match dimension");
  if (lines.size() == 1) throw FormatError("point file has no points");
  std::vector<std::uint64_t> coords;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto fields = split(lines[k], ',');
    if (fields.size() != width) throw FormatError("line " + std::to_string(k + 1) + ": wrong number of fields");
    for (std::size_t c = 0; c < width; c += 2) {
      const auto num = parse_number<std::uint64_t>(fields[c], k + 1);
      const auto exp = parse_number<int>(fields[c + 1], k + 1);
      if (exp < 0 || exp > meta.depth) {
        throw FormatError("line " + std::to_string(k + 1) + ": exponent outside 0.." + std::to_string(meta.depth));
      }
      if ((num >> exp) != 0) throw FormatError("line " + std::to_string(k + 1) + ": point outside [0,1)^d");
      const std::uint64_t cell = num << (meta.depth - exp);
      coords.push_back(cell);
    }
  }
  return DyadicSet(CellSet(meta.dimension, meta.depth, std::move(coords)), meta.rescale_exponent);
}

std::filesystem::path metadata_path(const std::filesystem::path& points_path) {
  std::filesystem::path out = points_path;
  out.replace_extension(".json");
  return out;
}

std::string tree_to_text(const DyadicSet& set) {
  std::string out = "tree d=" + std::to_string(set.dimension()) + " rescale=" + std::to_string(set.rescale_exponent()) + '\n';
  for (int n = 0; n <= set.depth(); ++n) {
    const CellSet& cells = set.level(n);
    out += "level " + std::to_string(n) + ' ' + std::to_string(cells.size()) + '\n';
    for (std::size_t k = 0; k < cells.size(); ++k) out += address_of(cells.cell(k), n) + '\n';
  }
  return out;
}

DyadicSet tree_from_text(std::string_view text) {
  const auto lines = lines_of(text);
  int d = 0, rescale = 0;
  if (lines.empty() || std::sscanf(std::string(lines.front()).c_str(), "tree d=%d rescale=%d", &d, &rescale) != 2 || d < 1 ||
      d > 16 || rescale < 0) {
    throw FormatError("line 1: expected 'tree d=<d> rescale=<e>'");
  }
  std::vector<CellSet> levels;
  std::size_t k = 1;
  while (k < lines.size()) {
    int n = -1;
    unsigned long long count = 0;
    if (std::sscanf(std::string(lines[k]).c_str(), "level %d %llu", &n, &count) != 2 ||
        n != static_cast<int>(levels.size())) {
      throw FormatError("line " + std::to_string(k + 1) + ": expected 'level " + std::to_string(levels.size()) + " <count>'");
    }
    if (n > kMaxLevel) throw FormatError("line " + std::to_string(k + 1) + ": level too deep");
    ++k;
    std::vector<std::uint64_t> coords;
    for (unsigned long long m = 0; m < count; ++m, ++k) {
      if (k >= lines.size()) throw FormatError("truncated level " + std::to_string(n));
      std::vector<std::uint64_t> cell(static_cast<std::size_t>(d), 0);
      if (n == 0) {
        if (lines[k] != "-") throw FormatError("line " + std::to_string(k + 1) + ": root address must be '-'");
      } else {
        const auto digits = split(lines[k], '.');
        if (digits.size() != static_cast<std::size_t>(n)) {
          throw FormatError("line " + std::to_string(k + 1) + ": address has the wrong length");
        }
        for (const auto& field : digits) {
          const auto digit = parse_number<unsigned>(field, k + 1);
          if (digit >= (1u << d)) throw FormatError("line " + std::to_string(k + 1) + ": digit out of range");
          for (int c = 0; c < d; ++c) cell[c] = (cell[c] << 1) | ((digit >> c) & 1u);
        }
      }
      coords.insert(coords.end(), cell.begin(), cell.end());
    }
    levels.emplace_back(d, n, std::move(coords));
  }
  if (levels.empty()) throw FormatError("tree has no levels");
  for (std::size_t n = 1; n < levels.size(); ++n) {
    if (!std::ranges::equal(levels[n].coarsen(static_cast<int>(n) - 1).flat(), levels[n - 1].flat())) {
      throw FormatError("level " + std::to_string(n - 1) + " is not the parent set of level " + std::to_string(n));
    }
  }
  try {
    return DyadicSet(std::move(levels), rescale);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

IfsFile ifs_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    const int d = j.at("d").get<int>();
    if (d < 1) throw FormatError("d must be positive");
    std::vector<Similarity> maps;
    for (const json& m : j.at("maps")) {
      const int exp = m.at("ratio_exp").get<int>();
      if (exp < 1 || exp > 30) throw FormatError("ratio_exp must lie in 1..30");
      auto translation = m.at("translation").get<std::vector<double>>();
      if (translation.size() != static_cast<std::size_t>(d)) throw FormatError("translation has the wrong length");
      maps.push_back({std::ldexp(1.0, -exp), std::move(translation)});
    }
    const std::string condensation = j.value("condensation", std::string("point"));
    try {
      return IfsFile{SimilarityIFS(d, std::move(maps), true), condensation};
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("ifs: ") + e.what());
  }
}

}  // namespace branching
