#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "anivisc/experiment.hpp"
#include "json.hpp"

namespace anivisc {

/// Everything a CLI run reads from its JSON config:
///   {"grid": {"n_h", "n_v", "m"},
///    "stepper": {"dt", "t_end", "scheme": "if-rk4"|"if-rk2", "snapshot_stride", "dealias", "cfl"},
///    "initial_data": {"u0h", "w0_3", "amplitude", "w_amplitude", "seed", "u0h_modes", "w0_3_modes"},
///    "sweep": {"m_values", "cbar", "solver_tolerance", "blowup_factor", "tail_limit", "largeness"}}
/// Missing keys keep their defaults; unknown keys are rejected.
struct RunConfig {
  int n_h = 64;
  int n_v = 64;
  int m = 2;
  StepperConfig stepper{0.01, 1.0, Scheme::if_rk4, 4, true, 0.5};
  InitialDataSpec initial;
  SweepConfig sweep;  // n_h, n_v and stepper mirror the fields above

  Grid grid() const { return Grid::make(n_h, n_v, m); }
  Grid unit_grid() const { return Grid::make(n_h, n_v); }
};

RunConfig parse_config(const nlohmann::json& j);
/// Throws std::runtime_error when the file cannot be read or parsed.
RunConfig load_config(const std::string& path);

nlohmann::json to_json(const RunConfig& c);
nlohmann::json to_json(const InitialDataSpec& s);
nlohmann::json to_json(const SweepConfig& s);
nlohmann::json to_json(const StepperConfig& s);

std::uint64_t fnv1a64(std::string_view bytes);
/// Hash of the canonical (sorted-key) JSON of a configuration.
std::uint64_t config_hash(const nlohmann::json& j);
std::uint64_t config_hash(const InitialDataSpec& spec, const SweepConfig& sweep);
std::string hex64(std::uint64_t v);

}  // namespace anivisc
