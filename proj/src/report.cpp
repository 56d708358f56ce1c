#include "anivisc/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "anivisc/config.hpp"

namespace anivisc {
namespace {

using nlohmann::json;

// JSON has no NaN/inf; they are written as null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json uapp_json(const UappNorms& u) {
  return {{"linf_B012", num(u.linf_b0)},
          {"L2_B112", num(u.l2_b1)},
          {"d3_L2_B012", num(u.d3_l2_b0)},
          {"L2_B012_aniso", num(u.l2_b0)},
          {"d3_L1_B112", num(u.d3_l1_b1)}};
}

}  // namespace

json to_json(const ExperimentReport& r) {
  json rows = json::array();
  for (const SweepRow& row : r.rows) {
    rows.push_back({{"m", row.m},
                    {"eps", row.eps},
                    {"sup_R_B012", num(row.sup_r_b0)},
                    {"L2_gradh_R", num(row.l2_gradh_r)},
                    {"tail_density_gradh_R", num(row.tail_density)},
                    {"uapp", uapp_json(row.uapp)},
                    {"pressure",
                     {{"d3_p0_L1_B012", num(row.pressure.d3_p0)},
                      {"d3_p1h_L1_B012", num(row.pressure.d3_p1h)},
                      {"gradh_p13_L1_B012", num(row.pressure.gradh_p13)}}},
                    {"partition",
                     {{"K", row.partition.chunks()},
                      {"times", row.partition.times},
                      {"products", row.partition.products},
                      {"satisfied", row.partition.satisfied}}},
                    {"largeness_proxy", num(row.largeness)},
                    {"energy_defect", num(row.energy_defect)},
                    {"max_divergence", num(row.max_divergence)}});
  }
  json out{{"schema_version", ExperimentReport::kSchemaVersion},
           {"config_hash", hex64(r.config_hash)},
           {"seed", r.seed},
           {"config", {{"initial_data", to_json(r.spec)}, {"sweep", to_json(r.sweep)}}},
           {"profile_norms", {{"B0_half", num(r.profile_norms.b0_half)}, {"Bm1_5half", num(r.profile_norms.bm1_five_half)}}},
           {"wh_momentum_residual_sup_B012", num(r.wh_residual)},
           {"rows", rows}};
  if (r.rows.size() >= 2)
    out["summary"] = {{"slope", num(r.fit.slope)},
                      {"intercept", num(r.fit.intercept)},
                      {"fit_residual", num(r.fit.residual)}};
  return out;
}

std::string sweep_csv(const ExperimentReport& r) {
  std::ostringstream s;
  s.precision(17);
  s << kSweepCsvHeader << '\n';
  for (const SweepRow& row : r.rows)
    s << row.m << ',' << row.eps << ',' << row.sup_r_b0 << ',' << row.l2_gradh_r << ',' << row.uapp.linf_b0 << ','
      << row.uapp.l2_b1 << ',' << row.uapp.d3_l1_b1 << ',' << row.partition.chunks() << '\n';
  return s.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("failed while writing '" + path.string() + "'");
}

void export_report(const ExperimentReport& r, const std::filesystem::path& dir) {
  if (r.rows.empty()) throw std::invalid_argument("empty sweep: nothing to export");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
  const std::string csv = sweep_csv(r);
  const std::string js = to_json(r).dump(2) + "\n";
  write_text(dir / "sweep.csv", csv);
  write_text(dir / "report.json", js);
}

}  // namespace anivisc
