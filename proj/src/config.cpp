#include "anivisc/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

namespace anivisc {
namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + " must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw std::invalid_argument("unknown key '" + k + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::vector<ModeCoeff> read_modes(const json& j) {
  std::vector<ModeCoeff> out;
  for (const auto& m : j) {
    reject_unknown(m, {"k", "re", "im"}, "mode");
    const auto k = m.at("k").get<std::vector<int>>();
    if (k.size() != 3) throw std::invalid_argument("mode wavevector needs three integers");
    out.push_back({k[0], k[1], k[2], m.value("re", 0.0), m.value("im", 0.0)});
  }
  return out;
}

json write_modes(const std::vector<ModeCoeff>& modes) {
  json a = json::array();
  for (const auto& m : modes) a.push_back({{"k", {m.k1, m.k2, m.k3}}, {"re", m.re}, {"im", m.im}});
  return a;
}

Scheme parse_scheme(const std::string& s) {
  if (s == "if-rk4") return Scheme::if_rk4;
  if (s == "if-rk2") return Scheme::if_rk2;
  throw std::invalid_argument("unknown scheme '" + s + "' (expected if-rk4 or if-rk2)");
}

}  // namespace

RunConfig parse_config(const json& j) {
  reject_unknown(j, {"grid", "stepper", "initial_data", "sweep"}, "config");
  RunConfig c;
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    reject_unknown(g, {"n_h", "n_v", "m"}, "grid");
    read(g, "n_h", c.n_h);
    read(g, "n_v", c.n_v);
    read(g, "m", c.m);
  }
  if (j.contains("stepper")) {
    const json& s = j.at("stepper");
    reject_unknown(s, {"dt", "t_end", "scheme", "snapshot_stride", "dealias", "cfl"}, "stepper");
    read(s, "dt", c.stepper.dt);
    read(s, "t_end", c.stepper.t_end);
    read(s, "snapshot_stride", c.stepper.snapshot_stride);
    read(s, "dealias", c.stepper.dealias);
    read(s, "cfl", c.stepper.cfl);
    if (s.contains("scheme")) c.stepper.scheme = parse_scheme(s.at("scheme").get<std::string>());
  }
  if (j.contains("initial_data")) {
    const json& d = j.at("initial_data");
    reject_unknown(d, {"u0h", "w0_3", "amplitude", "w_amplitude", "seed", "u0h_modes", "w0_3_modes"},
                   "initial_data");
    read(d, "u0h", c.initial.u0h);
    read(d, "w0_3", c.initial.w0_3);
    read(d, "amplitude", c.initial.amplitude);
    read(d, "w_amplitude", c.initial.w_amplitude);
    read(d, "seed", c.initial.seed);
    if (d.contains("u0h_modes")) c.initial.u0h_modes = read_modes(d.at("u0h_modes"));
    if (d.contains("w0_3_modes")) c.initial.w0_3_modes = read_modes(d.at("w0_3_modes"));
  }
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    reject_unknown(s, {"m_values", "cbar", "solver_tolerance", "blowup_factor", "tail_limit", "largeness"},
                   "sweep");
    read(s, "m_values", c.sweep.m_values);
    read(s, "cbar", c.sweep.cbar);
    read(s, "solver_tolerance", c.sweep.solver_tolerance);
    read(s, "blowup_factor", c.sweep.blowup_factor);
    read(s, "tail_limit", c.sweep.tail_limit);
    read(s, "largeness", c.sweep.largeness);
  }
  c.sweep.n_h = c.n_h;
  c.sweep.n_v = c.n_v;
  c.sweep.stepper = c.stepper;
  c.grid();  // validates sizes
  c.stepper.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

json to_json(const StepperConfig& s) {
  return {{"dt", s.dt},
          {"t_end", s.t_end},
          {"scheme", s.scheme == Scheme::if_rk4 ? "if-rk4" : "if-rk2"},
          {"snapshot_stride", s.snapshot_stride},
          {"dealias", s.dealias},
          {"cfl", s.cfl}};
}

json to_json(const InitialDataSpec& s) {
  return {{"u0h", s.u0h},
          {"w0_3", s.w0_3},
          {"amplitude", s.amplitude},
          {"w_amplitude", s.w_amplitude},
          {"seed", s.seed},
          {"u0h_modes", write_modes(s.u0h_modes)},
          {"w0_3_modes", write_modes(s.w0_3_modes)}};
}

json to_json(const SweepConfig& s) {
  return {{"m_values", s.m_values},     {"n_h", s.n_h},
          {"n_v", s.n_v},               {"stepper", to_json(s.stepper)},
          {"cbar", s.cbar},             {"solver_tolerance", s.solver_tolerance},
          {"blowup_factor", s.blowup_factor}, {"tail_limit", s.tail_limit},
          {"largeness", s.largeness}};
}

json to_json(const RunConfig& c) {
  json s = to_json(c.sweep);
  for (const char* k : {"n_h", "n_v", "stepper"}) s.erase(k);
  return {{"grid", {{"n_h", c.n_h}, {"n_v", c.n_v}, {"m", c.m}}},
          {"stepper", to_json(c.stepper)},
          {"initial_data", to_json(c.initial)},
          {"sweep", s}};
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t config_hash(const json& j) { return fnv1a64(j.dump()); }

std::uint64_t config_hash(const InitialDataSpec& spec, const SweepConfig& sweep) {
  return config_hash(json{{"initial_data", to_json(spec)}, {"sweep", to_json(sweep)}});
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace anivisc
