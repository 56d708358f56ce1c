// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "anivisc/approx.hpp"
#include "anivisc/config.hpp"
#include "anivisc/experiment.hpp"
#include "anivisc/lab.hpp"
#include "anivisc/littlewood_paley.hpp"
#include "anivisc/nsh_solver.hpp"
#include "anivisc/partition.hpp"
#include "anivisc/random_fields.hpp"
#include "anivisc/report.hpp"
#include "anivisc/slice_solver.hpp"
#include "anivisc/spectral_ops.hpp"

using namespace anivisc;
using std::cos;
using std::exp;
using std::sin;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double coeff_max(const SpectralField& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f.data()[i]));
  return m;
}

double field_diff(const VectorField& a, const VectorField& b) {
  double m = 0.0;
  for (int c = 0; c < 3; ++c) m = std::max(m, max_abs(a[c] - b[c], 1));
  return m;
}

SpectralField noise(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  RealVec v(g.size());
  for (double& x : v) x = nd(rng);
  return forward_transform(v, g);
}

std::string fmt(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", x);
  return b;
}

Outcome identities() {
  double worst = 0.0;
  std::ostringstream d;
  for (int n : {32, 64}) {
    const Grid g = Grid::make(n, n);
    std::mt19937_64 rng(n);
    std::normal_distribution<double> nd;
    RealVec v(g.size());
    for (double& x : v) x = nd(rng);
    const RealVec back = inverse_transform(forward_transform(v, g));
    double rt = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) rt = std::max(rt, std::abs(back[i] - v[i]));

    const SpectralField phi = dealias(noise(g, 7));
    const VectorField grad{derivative(phi, 1), derivative(phi, 2), derivative(phi, 3)};
    const VelocityState pr = leray_project(grad);
    double leray = 0.0;
    for (int c = 0; c < 3; ++c) leray = std::max(leray, coeff_max(pr.u[c]));

    const SpectralField f = noise(g, 11);
    double pou = 0.0;
    for (lp::Axis ax : {lp::Axis::vertical, lp::Axis::horizontal})
      pou = std::max(pou, coeff_max(lp::decompose(f, ax).sum() - f));

    const SpectralField a = noise(g, 13), b = noise(g, 17);
    const lp::BonyParts bp = lp::bony_vertical_decompose(a, b);
    const double bony = coeff_max(bp.t1 + bp.t2 + bp.r - product(a, b, false));

    d << n << "^3: round trip " << fmt(rt) << ", Leray " << fmt(leray) << ", partition " << fmt(pou)
      << ", Bony " << fmt(bony) << "; ";
    worst = std::max({worst, rt, leray, pou, bony});
  }
  return {worst <= 1e-11, d.str() + "max " + fmt(worst) + " <= 1e-11"};
}

Outcome analytic() {
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.5;
  cfg.snapshot_stride = 100;
  const Grid g = Grid::make(32, 4);
  const SpectralField t1 = sample(g, [](double x, double y, double) { return cos(x) * sin(y); });
  const SpectralField t2 = sample(g, [](double x, double y, double) { return -sin(x) * cos(y); });
  const SliceTrajectory tr = solve_ns2d_slices(slices_from_spectral(t1, t2), cfg);
  double tg = 0.0, p0 = 0.0;
  for (const SliceEnsemble& s : tr.snapshots) {
    const auto u = slices_to_spectral(s);
    tg = std::max({tg, max_abs(u[0] - exp(-2 * s.t) * t1, 1), max_abs(u[1] - exp(-2 * s.t) * t2, 1)});
    const double decay = exp(-4 * s.t);
    const SpectralField exact =
        sample(g, [decay](double x, double y, double) { return -(cos(2 * x) + cos(2 * y)) / 4 * decay; });
    p0 = std::max(p0, max_abs(compute_p0(u[0], u[1]) - exact, 1));
  }

  const Grid gw = Grid::make(32, 16);
  StepperConfig hc;
  hc.dt = 0.01;
  hc.t_end = 1.0;
  hc.snapshot_stride = 10;
  const SliceTrajectory still = solve_ns2d_slices(slices_from_spectral(SpectralField(gw), SpectralField(gw)), hc);
  SpectralField w0 = gaussian_field(gw, {0, 6, 0, 3}, 5);
  for (int i3 = 1; i3 < gw.n_v(); ++i3) w0.data()[gw.index(0, 0, i3)] = 0.0;
  const auto w = solve_transport_w3(still, w0, hc);
  double heat = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k)
    heat = std::max(heat, coeff_max(w[k] - heat_h(w0, still.snapshots[k].t)) / coeff_max(w0));

  const bool ok = tg <= 1e-8 && heat <= 1e-12 && p0 <= 1e-8;
  return {ok, "Taylor-Green slices " + fmt(tg) + " <= 1e-8, w3 heat flow " + fmt(heat) + " <= 1e-12, p0 " +
                  fmt(p0) + " <= 1e-8"};
}

Outcome hallmark() {
  const Grid g = Grid::make(32, 32);
  StepperConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 1.0;
  cfg.snapshot_stride = 5;
  const SpectralField zero(g);
  const VectorField shear{sample(g, [](double, double, double z) { return sin(z); }), zero, zero};
  double kept = 0.0;
  run_nsh(shear, cfg, [&](const VelocityState& s, std::size_t) { kept = std::max(kept, field_diff(s.u, shear)); });
  const VectorField wave{sample(g, [](double, double y, double) { return cos(y); }), zero, zero};
  double decay = 0.0;
  run_nsh(wave, cfg, [&](const VelocityState& s, std::size_t) {
    decay = std::max(decay, field_diff(s.u, VectorField{exp(-s.t) * wave[0], zero, zero}));
  });
  // (0, 0, sin x3) is a gradient: the stepper must refuse it rather than project it away
  bool rejected = false;
  try {
    run_nsh(VectorField{zero, zero, sample(g, [](double, double, double z) { return sin(z); })}, cfg);
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  return {kept <= 1e-10 && decay <= 1e-10 && rejected,
          "(sin x3, 0, 0) drift " + fmt(kept) + ", (cos x2, 0, 0) vs e^-t " + fmt(decay) +
              " over [0, 1], <= 1e-10; (0, 0, sin x3) " + (rejected ? "rejected as not divergence-free" : "ACCEPTED")};
}

Outcome energy() {
  const RunConfig rc;  // default data, 64^3, m = 2, t_end = 1
  const VectorField u0 = build_initial_data(build_profiles(rc.initial, rc.unit_grid()), rc.m);
  const NshRunSummary s = run_nsh(u0, rc.stepper);
  const double rel = std::abs(s.final_energy + s.dissipation - s.initial_energy) / s.initial_energy;
  return {rel <= 1e-6, "64^3, m = 2, t_end = 1, " + std::to_string(s.steps) + " steps: relative defect " +
                           fmt(rel) + " <= 1e-6"};
}

struct SweepResults {
  ExperimentReport main, flat;
};

SweepResults run_sweeps() {
  SweepResults r;
  const SweepConfig sweep;  // m = 1..4, 64^3, t_end = 1
  r.main = run_remainder_experiment({}, sweep);
  InitialDataSpec flat;
  flat.u0h = "tg-flat";
  flat.w0_3 = "zero";
  SweepConfig fs = sweep;
  fs.largeness = false;
  r.flat = run_remainder_experiment(flat, fs);
  try {
    export_report(r.main, "acceptance_report");
  } catch (const std::exception& e) {
    std::printf("  (report not written: %s)\n", e.what());
  }
  return r;
}

Outcome scaling(const SweepResults& s) {
  std::ostringstream d;
  d << "sup_t ||R||_B(0,1/2):";
  for (const auto& row : s.main.rows) d << " m=" << row.m << " " << fmt(row.sup_r_b0);
  const LogLogFit& f = s.main.fit;
  double flat = 0.0;
  for (const auto& row : s.flat.rows) flat = std::max(flat, row.sup_r_b0);
  const double tol = s.main.sweep.solver_tolerance;
  // largest eps from which the fit over the remaining rows still holds
  double largest_eps = NAN;
  for (std::size_t i = 0; i + 1 < s.main.rows.size(); ++i) {
    std::vector<double> e, v;
    for (std::size_t k = i; k < s.main.rows.size(); ++k) {
      e.push_back(s.main.rows[k].eps);
      v.push_back(s.main.rows[k].sup_r_b0);
    }
    const LogLogFit fi = fit_loglog(e, v);
    if (fi.slope >= 0.8 && fi.slope <= 1.2 && fi.residual < 0.1) {
      largest_eps = e[0];
      break;
    }
  }
  d << "; slope " << fmt(f.slope) << " in [0.8, 1.2], residual " << fmt(f.residual) << " < 0.1; fit holds from eps = "
    << fmt(largest_eps) << "; degenerate case " << fmt(flat) << " <= " << fmt(10 * tol);
  const bool ok = f.slope >= 0.8 && f.slope <= 1.2 && f.residual < 0.1 && flat <= 10 * tol;
  return {ok, d.str()};
}

Outcome uapp_scaling(const ExperimentReport& r) {
  bool ok = r.rows.size() >= 2;
  std::ostringstream d;
  d << "d3 u_app L1 B(1,1/2) ratios:";
  double drift = 0.0;
  for (std::size_t i = 0; i + 1 < r.rows.size(); ++i) {
    const UappNorms& a = r.rows[i].uapp;
    const UappNorms& b = r.rows[i + 1].uapp;
    const double ratio = b.d3_l1_b1 / a.d3_l1_b1;
    d << " " << fmt(ratio);
    ok = ok && ratio >= 0.4 && ratio <= 0.6;
    for (auto [x, y] : {std::pair{a.linf_b0, b.linf_b0}, {a.l2_b1, b.l2_b1}, {a.l2_b0, b.l2_b0}})
      drift = std::max(drift, std::abs(y - x) / x);
  }
  ok = ok && drift <= 0.1;
  d << " in [0.4, 0.6]; other norms drift " << fmt(drift) << " <= 0.1";
  return {ok, d.str()};
}

Outcome inequalities() {
  lab::SuiteOptions opt;
  opt.samples = 20;
  bool ok = true;
  std::size_t n = 0, failed = 0;
  for (const std::string& name : lab::suite_names()) {
    for (const lab::CheckSummary& c : lab::run_suite(name, opt)) {
      ++n;
      std::printf("    %s %-42s max %.4g spread %.3g refined %.4g change %.2g %s\n", c.pass ? "ok  " : "FAIL",
                  c.check_id.c_str(), c.max_ratio, c.spread, c.refined_value, c.refinement_change,
                  c.detail.c_str());
      if (!c.pass) ++failed;
      ok = ok && c.pass;
    }
  }
  return {ok, std::to_string(n - failed) + "/" + std::to_string(n) +
                  " checks: spread < 4, refinement 32 -> 64 within 50%, block energy residual < 1e-5"};
}

Outcome partition(const ExperimentReport& r) {
  // synthetic: a single (j, q) = (2, 1) block with B(0,1/2) norm 1 and B(1,1/2) norm 4, so the chunk
  // product is 8 sqrt(len) and each chunk spans floor(1/64 / h) snapshot intervals
  const Grid g = Grid::make(32, 32);
  SpectralField f = sample(g, [](double x, double, double z) { return sin(8 * x) * sin(4 * z); });
  f *= 1.0 / (std::sqrt(2.0) * l2_norm(f));
  const lp::BesovSpec b1{1.0, 0.5, lp::BesovKind::anisotropic}, b0{0.0, 0.5, lp::BesovKind::vertical};
  const std::size_t intervals = 250;
  const double h = 1.0 / intervals;
  lp::NormTimeSeries l2 = lp::make_series(g, b1), li = lp::make_series(g, b0);
  for (std::size_t k = 0; k <= intervals; ++k) {
    l2.append(k * h, f);
    li.append(k * h, f);
  }
  const Partition p = time_partition(l2, li, 1.0);
  const auto per_chunk = static_cast<std::size_t>(std::floor((1.0 / 64) / h + 1e-9));
  const std::size_t expect = (intervals + per_chunk - 1) / per_chunk;
  bool ok = p.satisfied && (p.chunks() + 1 >= expect && p.chunks() <= expect + 1);
  for (double x : p.products) ok = ok && x <= 1.0;
  std::ostringstream d;
  d << "synthetic K = " << p.chunks() << " (closed form " << expect << ")";
  for (const auto& row : r.rows) {
    bool chunks_ok = row.partition.satisfied;
    for (double x : row.partition.products) chunks_ok = chunks_ok && x <= 1.0 / r.sweep.cbar;
    ok = ok && chunks_ok;
    d << "; m=" << row.m << " K=" << row.partition.chunks() << (chunks_ok ? "" : " (bound broken)");
  }
  return {ok, d.str()};
}

bool report(int id, const char* name, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s [%d] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), sec);
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "exact identities", identities);
  ok &= report(2, "analytic solutions", analytic);
  ok &= report(3, "anisotropy hallmark", hallmark);
  ok &= report(4, "energy balance", energy);
  SweepResults sweeps;
  bool swept = false;
  std::string sweep_error;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    sweeps = run_sweeps();
    swept = true;
  } catch (const std::exception& e) {
    sweep_error = e.what();
  }
  const double sweep_sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("  (remainder sweeps: %.1f s)\n", sweep_sec);
  auto need_sweep = [&](auto fn) {
    return [&, fn]() -> Outcome {
      if (!swept) return {false, "sweep failed: " + sweep_error};
      return fn();
    };
  };
  ok &= report(5, "remainder scaling", need_sweep([&] { return scaling(sweeps); }));
  ok &= report(6, "u_app scaling", need_sweep([&] { return uapp_scaling(sweeps.main); }));
  ok &= report(7, "inequality suites", inequalities);
  ok &= report(8, "time partition", need_sweep([&] { return partition(sweeps.main); }));
  return ok ? 0 : 1;
}
