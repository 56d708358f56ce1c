#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

// Inequality suites run by `anivisc verify` and the acceptance test.

namespace anivisc::lab {

struct SuiteOptions {
  std::size_t samples = 50;     // per dyadic index
  std::uint64_t seed = 2024;
  int coarse = 32;              // grid edge of the base run
  int fine = 64;                // grid edge of the refinement run (0 disables it)
  double spread_limit = 4.0;
  double refinement_limit = 0.5;  // relative change allowed under refinement
  double energy_tolerance = 1e-5;
};

struct CheckSummary {
  std::string check_id;
  std::string grid;
  std::size_t n_samples = 0;
  double max_ratio = 0.0;
  double spread = 0.0;           // max/min of per-index maxima (0 when not gated)
  double refined_value = 0.0;    // same statistic on the refined grid
  double refinement_change = 0.0;
  bool pass = false;
  std::string detail;
};

/// Suite names: bernstein, estimate11, product, trilinear, energy.
std::vector<std::string> suite_names();
/// Throws std::invalid_argument for an unknown suite.
std::vector<CheckSummary> run_suite(const std::string& name, const SuiteOptions& opt);

nlohmann::json to_json(const CheckSummary& c);

}  // namespace anivisc::lab
