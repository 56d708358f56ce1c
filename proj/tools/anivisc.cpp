// anivisc: command-line front end for the solvers, the remainder sweep and the
// inequality suites. Every subcommand that produces data writes JSON.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "anivisc/checkpoint.hpp"
#include "anivisc/config.hpp"
#include "anivisc/experiment.hpp"
#include "anivisc/lab.hpp"
#include "anivisc/parallel.hpp"
#include "anivisc/report.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace anivisc;
using nlohmann::json;

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

RunConfig read_config(const std::string& path) { return path.empty() ? RunConfig{} : load_config(path); }

json run_header(const RunConfig& c) {
  const json cfg = to_json(c);
  return {{"schema_version", 1}, {"config_hash", hex64(config_hash(cfg))}, {"seed", c.initial.seed}, {"config", cfg}};
}

std::string snapshot_name(std::size_t k) {
  char b[32];
  std::snprintf(b, sizeof b, "snap_%05zu.ansh", k);
  return b;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
}

json norms_json(const UappNorms& u) {
  return {{"linf_B012", num(u.linf_b0)},
          {"L2_B112", num(u.l2_b1)},
          {"d3_L2_B012", num(u.d3_l2_b0)},
          {"L2_B012_aniso", num(u.l2_b0)},
          {"d3_L1_B112", num(u.d3_l1_b1)}};
}

int cmd_simulate(const std::string& cfg_path, const fs::path& out) {
  const RunConfig c = read_config(cfg_path);
  const Profiles p = build_profiles(c.initial, c.unit_grid(), c.sweep.tail_limit);
  make_dir(out);
  json idx = run_header(c);
  json snaps = json::array();
  const NshRunSummary s = run_nsh(build_initial_data(p, c.m), c.stepper, [&](const VelocityState& st, std::size_t k) {
    const std::string name = snapshot_name(k);
    write_checkpoint(out / name, st);
    snaps.push_back({{"t", st.t}, {"file", name}});
  });
  idx["snapshots"] = snaps;
  idx["summary"] = {{"steps", s.steps},
                    {"initial_energy", s.initial_energy},
                    {"final_energy", s.final_energy},
                    {"dissipation", s.dissipation},
                    {"energy_defect", s.initial_energy > 0 ? std::abs(s.final_energy + s.dissipation - s.initial_energy) /
                                                                 s.initial_energy
                                                           : 0.0},
                    {"max_divergence", s.max_divergence}};
  write_json(out / "index.json", idx);
  std::cout << idx["summary"].dump(2) << "\n";
  return 0;
}

int cmd_approx(const std::string& cfg_path, const fs::path& out) {
  const RunConfig c = read_config(cfg_path);
  const ApproxTrajectory a = solve_approx(build_profiles(c.initial, c.unit_grid(), c.sweep.tail_limit), c.stepper);
  make_dir(out);
  json idx = run_header(c);
  json snaps = json::array();
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::string name = snapshot_name(k);
    write_checkpoint(out / name, VelocityState{a.uapp(k, c.m), a.times[k]});
    snaps.push_back({{"t", a.times[k]}, {"file", name}});
  }
  idx["snapshots"] = snaps;
  const PressureBounds pb = verify_pressure_bounds(a);
  idx["uapp_norms"] = norms_json(compute_uapp_norms(a, c.m));
  idx["pressure"] = {{"d3_p0_L1_B012", num(pb.d3_p0)},
                     {"d3_p1h_L1_B012", num(pb.d3_p1h)},
                     {"gradh_p13_L1_B012", num(pb.gradh_p13)}};
  idx["wh_momentum_residual_sup_B012"] = num(wh_residual_sup(a));
  write_json(out / "index.json", idx);
  std::cout << json{{"uapp_norms", idx["uapp_norms"]}, {"pressure", idx["pressure"]}}.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const std::string& cfg_path, const fs::path& out) {
  const RunConfig c = read_config(cfg_path);
  const ExperimentReport r = run_remainder_experiment(c.initial, c.sweep);
  export_report(r, out);
  std::cout << sweep_csv(r);
  if (r.rows.size() >= 2)
    std::printf("slope %.4f  intercept %.4f  residual %.4f\n", r.fit.slope, r.fit.intercept, r.fit.residual);
  std::printf("wrote %s and %s\n", (out / "sweep.csv").c_str(), (out / "report.json").c_str());
  return 0;
}

// Mean blocks carry no dyadic index.
json label(int i) { return i == lp::kNone ? json(nullptr) : json(i); }

int cmd_besov(const std::string& path, double s, double sprime, const std::string& kind) {
  if (kind != "vertical" && kind != "anisotropic")
    throw std::invalid_argument("--kind must be vertical or anisotropic");
  const VelocityState st = read_checkpoint(path);
  const lp::BesovSpec spec{s, sprime, kind == "vertical" ? lp::BesovKind::vertical : lp::BesovKind::anisotropic};
  const Grid& g = st.u[0].grid();
  const auto labels = lp::block_labels(g, spec);
  const auto values = lp::weighted_block_norms(st.u, spec);
  json blocks = json::array();
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (values[i] > 0.0) blocks.push_back({{"j", label(labels[i].j)}, {"q", label(labels[i].q)}, {"weighted_norm", values[i]}});
  const json out{{"checkpoint", path},
                 {"t", st.t},
                 {"grid", {{"n_h", g.n_h()}, {"n_v", g.n_v()}, {"m", g.m()}}},
                 {"s", s},
                 {"s_prime", sprime},
                 {"kind", kind},
                 {"norm", lp::besov_norm(st.u, spec)},
                 {"blocks", blocks}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_verify(const std::string& suites, const lab::SuiteOptions& opt, const std::string& out) {
  std::vector<std::string> names = suites == "all" ? lab::suite_names() : split(suites);
  if (names.empty()) throw std::invalid_argument("no suite given");
  json all = json::array();
  bool ok = true;
  for (const std::string& name : names) {
    for (const lab::CheckSummary& c : lab::run_suite(name, opt)) {
      std::printf("%s %-44s max %.4g  spread %.3g  refined %.4g  change %.2g  %s\n", c.pass ? "PASS" : "FAIL",
                  c.check_id.c_str(), c.max_ratio, c.spread, c.refined_value, c.refinement_change, c.detail.c_str());
      std::fflush(stdout);
      all.push_back(lab::to_json(c));
      ok = ok && c.pass;
    }
  }
  if (!out.empty())
    write_json(out, {{"schema_version", 1},
                     {"seed", opt.seed},
                     {"samples", opt.samples},
                     {"grids", {opt.coarse, opt.fine}},
                     {"checks", all}});
  return ok ? 0 : 1;
}

int cmd_partition(const std::string& cfg_path, double cbar, const std::string& out) {
  const RunConfig c = read_config(cfg_path);
  const ApproxTrajectory a = solve_approx(build_profiles(c.initial, c.unit_grid(), c.sweep.tail_limit), c.stepper);
  const UappSeries s = uapp_series(a, c.m);
  if (std::isnan(cbar)) cbar = c.sweep.cbar;
  const Partition p = time_partition(s.b1, s.b0, cbar);
  json j = run_header(c);
  j["cbar"] = cbar;
  j["K"] = p.chunks();
  j["times"] = p.times;
  j["products"] = p.products;
  j["satisfied"] = p.satisfied;
  if (!out.empty()) write_json(out, j);
  std::printf("K = %zu (cbar = %g, m = %d)%s\n", p.chunks(), cbar, c.m,
              p.satisfied ? "" : "  [a single snapshot interval exceeds the bound]");
  for (std::size_t k = 0; k < p.chunks(); ++k)
    std::printf("  [%.4f, %.4f]  product %.4f\n", p.times[k], p.times[k + 1], p.products[k]);
  return p.satisfied ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anivisc: Navier-Stokes with horizontal viscosity, slowly varying data"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (overrides ANIVISC_THREADS)");

  std::string cfg, out;
  auto* sim = app.add_subcommand("simulate", "Solve (NS)_h from the configured initial data");
  sim->add_option("--config", cfg, "JSON run config (defaults when omitted)");
  sim->add_option("--out", out, "Output directory for checkpoints and index.json")->required();

  auto* apx = app.add_subcommand("approx", "Build the approximate solution u_app");
  apx->add_option("--config", cfg, "JSON run config");
  apx->add_option("--out", out, "Output directory for checkpoints and index.json")->required();

  auto* swp = app.add_subcommand("remainder-sweep", "Remainder experiment over the configured m values");
  swp->add_option("--config", cfg, "JSON run config");
  swp->add_option("--out", out, "Report directory (sweep.csv, report.json)")->required();

  std::string ckpt, kind = "anisotropic";
  double s = 0.0, sprime = 0.5;
  auto* bes = app.add_subcommand("besov", "Besov norm of a checkpointed velocity");
  bes->add_option("--checkpoint", ckpt, "Checkpoint file (.ansh)")->required()->check(CLI::ExistingFile);
  bes->add_option("--s", s, "Horizontal regularity s");
  bes->add_option("--sprime", sprime, "Vertical regularity s'");
  bes->add_option("--kind", kind, "vertical | anisotropic");

  std::string suites = "all";
  lab::SuiteOptions opt;
  auto* ver = app.add_subcommand("verify", "Run inequality suites");
  ver->add_option("--suite", suites, "Comma-separated: bernstein,estimate11,product,trilinear,energy or all");
  ver->add_option("--samples", opt.samples, "Random samples per dyadic index");
  ver->add_option("--seed", opt.seed, "Base seed");
  ver->add_option("--coarse", opt.coarse, "Base grid edge");
  ver->add_option("--fine", opt.fine, "Refined grid edge (0 skips the refinement)");
  ver->add_option("--out", out, "Write the summaries as JSON");

  double cbar = NAN;
  auto* par = app.add_subcommand("partition", "Greedy time partition of u_app");
  par->add_option("--config", cfg, "JSON run config");
  par->add_option("--cbar", cbar, "Bound constant (chunk product <= 1/cbar); default from the config");
  par->add_option("--out", out, "Write the partition as JSON");

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) set_thread_cap(threads);

  try {
    if (*sim) return cmd_simulate(cfg, out);
    if (*apx) return cmd_approx(cfg, out);
    if (*swp) return cmd_sweep(cfg, out);
    if (*bes) return cmd_besov(ckpt, s, sprime, kind);
    if (*ver) return cmd_verify(suites, opt, out);
    if (*par) return cmd_partition(cfg, cbar, out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
