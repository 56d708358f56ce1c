#include "anivisc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "anivisc/config.hpp"
#include "anivisc/slice_solver.hpp"
#include "anivisc/spectral_ops.hpp"

namespace anivisc {
namespace {

const lp::BesovSpec kB0{0.0, 0.5, lp::BesovKind::vertical};
const lp::BesovSpec kB1{1.0, 0.5, lp::BesovKind::anisotropic};
const lp::BesovSpec kB0an{0.0, 0.5, lp::BesovKind::anisotropic};

VectorField d3(const VectorField& v, double scale) {
  return {scale * derivative(v[0], 3), scale * derivative(v[1], 3), scale * derivative(v[2], 3)};
}

VectorField pulled(const VectorField& v) { return {pull_back(v[0]), pull_back(v[1]), pull_back(v[2])}; }

std::vector<double> gradh_blocks(const VectorField& v, const lp::BesovSpec& spec) {
  const auto g = est::horizontal_gradient(v);
  const SpectralField* p[6];
  for (int c = 0; c < 6; ++c) p[c] = &g[c];
  return lp::weighted_block_norms(p, 6, spec);
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

ApproxProfiles ApproxTrajectory::profiles(std::size_t k) const { return make_profiles(u1[k], u2[k], w3[k]); }

VectorField ApproxTrajectory::uapp(std::size_t k, int m) const {
  return assemble_uapp(u1[k], u2[k], transport_field(w3[k]), m);
}

VectorField ApproxTrajectory::uapp_pulled(std::size_t k, int m) const {
  const double eps = std::ldexp(1.0, -m);
  const auto wh = reconstruct_wh(w3[k]);
  return {u1[k] + eps * wh[0], u2[k] + eps * wh[1], w3[k]};
}

ApproxTrajectory solve_approx(const Profiles& p, const StepperConfig& cfg) {
  SliceTrajectory slices = solve_ns2d_slices(slices_from_spectral(p.u1, p.u2), cfg);
  std::vector<SpectralField> w3 = solve_transport_w3(slices, p.w3, cfg);
  ApproxTrajectory a;
  a.cfg = cfg;
  a.w3 = std::move(w3);
  for (SliceEnsemble& s : slices.snapshots) {
    a.times.push_back(s.t);
    auto u = slices_to_spectral(s);
    a.u1.push_back(std::move(u[0]));
    a.u2.push_back(std::move(u[1]));
    s = SliceEnsemble{};
  }
  return a;
}

UappSeries::UappSeries(const Grid& g)
    : b0(lp::make_series(g, kB0)),
      b1(lp::make_series(g, kB1)),
      b0_an(lp::make_series(g, kB0an)),
      d3_b0(lp::make_series(g, kB0an)),
      d3_b1(lp::make_series(g, kB1)) {}

void UappSeries::append(double t, const VectorField& u, const VectorField& d3u) {
  b0.append(t, u);
  b1.append(t, u);
  b0_an.append(t, u);
  d3_b0.append(t, d3u);
  d3_b1.append(t, d3u);
}

UappNorms UappSeries::norms() const {
  if (b0.size() == 0) throw std::invalid_argument("empty u_app trajectory");
  UappNorms n;
  n.linf_b0 = lp::chemin_lerner_norm(b0, INFINITY);
  if (b0.size() < 2) return n;
  n.l2_b1 = lp::chemin_lerner_norm(b1, 2.0);
  n.d3_l2_b0 = lp::chemin_lerner_norm(d3_b0, 2.0);
  n.l2_b0 = lp::chemin_lerner_norm(b0_an, 2.0);
  n.d3_l1_b1 = lp::chemin_lerner_norm(d3_b1, 1.0);
  return n;
}

UappNorms compute_uapp_norms(const std::vector<double>& times, const std::vector<VectorField>& uapp,
                             double d3_scale) {
  if (uapp.empty() || times.size() != uapp.size())
    throw std::invalid_argument("u_app trajectory is empty or misaligned with its times");
  UappSeries s(uapp[0][0].grid());
  for (std::size_t k = 0; k < uapp.size(); ++k) s.append(times[k], uapp[k], d3(uapp[k], d3_scale));
  return s.norms();
}

UappSeries uapp_series(const ApproxTrajectory& a, int m) {
  if (a.size() == 0) throw std::invalid_argument("empty u_app trajectory");
  const double eps = std::ldexp(1.0, -m);
  UappSeries s(a.u1[0].grid());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const VectorField u = a.uapp_pulled(k, m);
    s.append(a.times[k], u, d3(u, eps));
  }
  return s;
}

UappNorms compute_uapp_norms(const ApproxTrajectory& a, int m) { return uapp_series(a, m).norms(); }

PressureBounds verify_pressure_bounds(const ApproxTrajectory& a) {
  if (a.size() < 2) throw std::invalid_argument("pressure bounds need at least two snapshots");
  const Grid& g = a.u1[0].grid();
  lp::NormTimeSeries s0 = lp::make_series(g, kB0), s1 = lp::make_series(g, kB0), s3 = lp::make_series(g, kB0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const ApproxProfiles p = a.profiles(k);
    s0.append(a.times[k], derivative(p.p.p0, 3));
    s1.append(a.times[k], derivative(p.p.p1h, 3));
    const SpectralField g1 = derivative(p.p.p13, 1), g2 = derivative(p.p.p13, 2);
    const SpectralField* c[2] = {&g1, &g2};
    s3.append(a.times[k], lp::weighted_block_norms(c, 2, kB0));
  }
  return {lp::chemin_lerner_norm(s0, 1.0), lp::chemin_lerner_norm(s1, 1.0), lp::chemin_lerner_norm(s3, 1.0)};
}

double wh_residual_sup(const ApproxTrajectory& a) {
  double out = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const ApproxProfiles p = a.profiles(k);
    out = std::max(out, lp::besov_norm(wh_momentum_residual(p.u1, p.u2, p.w, p.p), kB0));
  }
  return out;
}

void SweepConfig::validate() const {
  if (m_values.empty()) throw std::invalid_argument("sweep needs at least one m value");
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    if (m_values[i] < 0) throw std::invalid_argument("m values must be nonnegative");
    if (i > 0 && m_values[i] <= m_values[i - 1]) throw std::invalid_argument("m values must be strictly increasing");
  }
  if (!(cbar > 0.0)) throw std::invalid_argument("cbar must be positive");
  stepper.validate();
  Grid::make(n_h, n_v);
}

LogLogFit fit_loglog(const std::vector<double>& eps, const std::vector<double>& values) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < eps.size() && i < values.size(); ++i)
    if (eps[i] > 0.0 && values[i] > 0.0) {
      x.push_back(std::log(eps[i]));
      y.push_back(std::log(values[i]));
    }
  LogLogFit f;
  const std::size_t n = x.size();
  if (n < 2) return f;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    rss += r * r;
  }
  f.residual = std::sqrt(rss / n);
  return f;
}

ExperimentReport run_remainder_experiment(const InitialDataSpec& spec, const SweepConfig& sweep) {
  sweep.validate();
  const Grid unit = Grid::make(sweep.n_h, sweep.n_v);
  const Profiles prof = build_profiles(spec, unit, sweep.tail_limit);

  ExperimentReport rep;
  rep.spec = spec;
  rep.sweep = sweep;
  rep.seed = spec.seed;
  rep.config_hash = config_hash(spec, sweep);
  rep.profile_norms = profile_norms(prof);

  const ApproxTrajectory approx = solve_approx(prof, sweep.stepper);
  rep.wh_residual = wh_residual_sup(approx);
  const PressureBounds pressure = verify_pressure_bounds(approx);

  for (int m : sweep.m_values) {
    SweepRow row;
    row.m = m;
    row.eps = std::ldexp(1.0, -m);
    row.pressure = pressure;
    const UappSeries us = uapp_series(approx, m);
    row.uapp = us.norms();
    row.partition = time_partition(us.b1, us.b0, sweep.cbar);

    const VectorField u0 = build_initial_data(prof, m);
    if (sweep.largeness) row.largeness = largeness_proxy(u0);
    const double u0_norm = lp::besov_norm(pulled(u0), kB0);
    lp::NormTimeSeries gr = lp::make_series(unit, kB0);
    std::vector<double> last_grad;
    const NshRunSummary sum_run = run_nsh(u0, sweep.stepper, [&](const VelocityState& st, std::size_t s) {
      if (s >= approx.size() || std::abs(approx.times[s] - st.t) > 1e-12 * std::max(1.0, st.t))
        throw std::logic_error("snapshot times of the 3D run and the slice run differ");
      const VectorField u = pulled(st.u);
      const double un = lp::besov_norm(u, kB0);
      if (un > sweep.blowup_factor * std::max(u0_norm, 1e-300)) {
        std::ostringstream msg;
        msg << "blow-up guard: ||u||_B(0,1/2) = " << un << " at t = " << st.t << " for m = " << m
            << " exceeds " << sweep.blowup_factor << " x initial " << u0_norm;
        throw std::runtime_error(msg.str());
      }
      const VectorField r = u - approx.uapp_pulled(s, m);
      row.sup_r_b0 = std::max(row.sup_r_b0, lp::besov_norm(r, kB0));
      last_grad = gradh_blocks(r, kB0);
      gr.append(st.t, last_grad);
    });
    row.l2_gradh_r = gr.size() > 1 ? lp::chemin_lerner_norm(gr, 2.0) : 0.0;
    row.tail_density = sum(last_grad);
    row.energy_defect = sum_run.initial_energy > 0.0
                            ? std::abs(sum_run.final_energy + sum_run.dissipation - sum_run.initial_energy) /
                                  sum_run.initial_energy
                            : 0.0;
    row.max_divergence = sum_run.max_divergence;
    rep.rows.push_back(std::move(row));
  }

  std::vector<double> eps, sup;
  for (const auto& r : rep.rows) {
    eps.push_back(r.eps);
    sup.push_back(r.sup_r_b0);
  }
  rep.fit = fit_loglog(eps, sup);
  return rep;
}

est::RemainderTrajectory remainder_trajectory(const Profiles& p, int m, const StepperConfig& cfg) {
  const ApproxTrajectory approx = solve_approx(p, cfg);
  const double eps = std::ldexp(1.0, -m);
  est::RemainderTrajectory out;
  run_nsh(build_initial_data(p, m), cfg, [&](const VelocityState& st, std::size_t s) {
    const ApproxProfiles pr = approx.profiles(s);
    VectorField ua = approx.uapp(s, m);
    VectorField g = eps * compute_forcing_F(pr.u1, pr.u2, pr.w, pr.p, m);
    const VectorField mres = wh_momentum_residual(pr.u1, pr.u2, pr.w, pr.p);
    for (int c = 0; c < 2; ++c) g[c] += eps * slowly_varying_embed(mres[c], m);
    out.times.push_back(st.t);
    out.r.push_back(st.u - ua);
    out.uapp.push_back(std::move(ua));
    out.forcing.push_back(std::move(g));
  });
  return out;
}

}  // namespace anivisc
