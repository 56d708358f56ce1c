#pragma once

#include <filesystem>
#include <string>

#include "anivisc/experiment.hpp"
#include "json.hpp"

namespace anivisc {

inline constexpr const char* kSweepCsvHeader =
    "m,eps,sup_R_B012,L2_gradh_R,uapp_Linf,uapp_L2_B112,d3uapp_L1_B112,K_partition";

nlohmann::json to_json(const ExperimentReport& r);
std::string sweep_csv(const ExperimentReport& r);

/// Writes <dir>/sweep.csv and <dir>/report.json, creating dir if needed.
/// Throws std::invalid_argument for an empty sweep (nothing is written) and
/// std::runtime_error when the files cannot be written.
void export_report(const ExperimentReport& r, const std::filesystem::path& dir);

/// Writes text to a file, throwing std::runtime_error on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace anivisc
