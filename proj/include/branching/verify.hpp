#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace branching {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::vector<std::pair<std::string, double>> measurements;
  std::string note;
};

/// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs one acceptance suite (core, operators, attain, inhomog or all) with every
/// random choice drawn from `seed`. Throws std::invalid_argument for unknown names.
std::vector<CriterionResult> run_suite(std::string_view suite, std::uint64_t seed);

/// {"suite", "seed", "passed", "criteria":[{"id", "title", "passed", "measurements", "note"}]}.
std::string report_json(std::string_view suite, std::uint64_t seed, const std::vector<CriterionResult>& results);

}  // namespace branching
