#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nilgrade {

struct AcceptanceOptions {
  std::uint64_t seed = 42;
  double tolerance = 1e-9;
  bool parallel = true;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs criteria 1..9, or only `only` when given.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::optional<int> only = std::nullopt);

}  // namespace nilgrade
