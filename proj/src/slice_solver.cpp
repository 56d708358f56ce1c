#include "anivisc/slice_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "anivisc/fft.hpp"
#include "anivisc/kernels.hpp"
#include "anivisc/parallel.hpp"
#include "anivisc/spectral_ops.hpp"

namespace anivisc {
namespace {

constexpr double kArea = 4.0 * std::numbers::pi * std::numbers::pi;

struct SliceWorkspace {
  Grid grid;
  std::array<ComplexVec, 3> phys;  // u1, u2, w
  std::array<ComplexVec, 5> flux;  // u1u1, u1u2, u2u2, u1w, u2w
  std::vector<double> kh2;
  std::vector<char> keep_line;

  void ensure(const Grid& g) {
    if (grid == g && !kh2.empty()) return;
    grid = g;
    for (auto& b : phys) b.assign(g.size(), Complex{});
    for (auto& b : flux) b.assign(g.size(), Complex{});
    kh2.resize(g.lines());
    keep_line.resize(g.lines());
    for (int i1 = 0; i1 < g.n_h(); ++i1)
      for (int i2 = 0; i2 < g.n_h(); ++i2) {
        const std::size_t l = static_cast<std::size_t>(i1) * g.n_h() + i2;
        kh2[l] = g.xi_h(i1) * g.xi_h(i1) + g.xi_h(i2) * g.xi_h(i2);
        keep_line[l] = std::abs(g.k_h(i1)) <= g.dealias_h() && std::abs(g.k_h(i2)) <= g.dealias_h();
      }
  }
};

SliceWorkspace& workspace(const Grid& g) {
  thread_local SliceWorkspace ws;
  ws.ensure(g);
  return ws;
}

// Fields of the joint slice system: u1, u2 and optionally the scalar w3.
using SliceFields = std::vector<SpectralField>;

void to_slices(const SpectralField& f, ComplexVec& buf) {
  std::copy(f.data(), f.data() + f.size(), buf.data());
  fft::transform_h(buf.data(), f.grid(), fft::Dir::backward);
}

void from_slices(ComplexVec& buf, const SliceWorkspace& ws, bool dealias) {
  const Grid& g = ws.grid;
  const auto& kt = kernels::active();
  fft::transform_h(buf.data(), g, fft::Dir::forward);
  kt.scale(buf.data(), 1.0 / (static_cast<double>(g.n_h()) * g.n_h()), buf.size());
  if (!dealias) return;
  for (std::size_t l = 0; l < g.lines(); ++l)
    if (!ws.keep_line[l]) std::fill_n(buf.data() + l * g.n_v(), g.n_v(), Complex{});
}

// out = (-P_h div_h(u^h (x) u^h), -div_h(u^h w)); returns max |u^h|.
double slice_nonlinear(const SliceFields& s, SliceFields& out, bool dealias, SliceWorkspace& ws) {
  const Grid& g = s[0].grid();
  const auto& kt = kernels::active();
  const std::size_t n = g.size();
  const bool with_w = s.size() == 3;
  for (std::size_t c = 0; c < s.size(); ++c) to_slices(s[c], ws.phys[c]);
  double max2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = ws.phys[0][i].real(), b = ws.phys[1][i].real();
    max2 = std::max(max2, a * a + b * b);
  }
  const int pairs[5][2] = {{0, 0}, {0, 1}, {1, 1}, {0, 2}, {1, 2}};
  const int n_flux = with_w ? 5 : 3;
  for (int p = 0; p < n_flux; ++p) {
    kt.mul_real(ws.flux[p].data(), ws.phys[pairs[p][0]].data(), ws.phys[pairs[p][1]].data(), n);
    from_slices(ws.flux[p], ws, dealias);
  }
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2) {
      const std::size_t off = g.index(i1, i2, 0);
      const double k1 = g.dxi_h(i1), k2 = g.dxi_h(i2);
      kt.neg_i_div(out[0].data() + off, ws.flux[0].data() + off, ws.flux[1].data() + off, nullptr,
                   k1, k2, nullptr, g.n_v());
      kt.neg_i_div(out[1].data() + off, ws.flux[1].data() + off, ws.flux[2].data() + off, nullptr,
                   k1, k2, nullptr, g.n_v());
      kt.leray_line(out[0].data() + off, out[1].data() + off, nullptr, k1, k2, nullptr, g.n_v());
      if (with_w)
        kt.neg_i_div(out[2].data() + off, ws.flux[3].data() + off, ws.flux[4].data() + off,
                     nullptr, k1, k2, nullptr, g.n_v());
    }
  return std::sqrt(max2);
}

void semigroup(SliceFields& v, double tau, const SliceWorkspace& ws) {
  const Grid& g = ws.grid;
  const auto& kt = kernels::active();
  for (std::size_t l = 0; l < g.lines(); ++l) {
    const double e = std::exp(-ws.kh2[l] * tau);
    for (auto& c : v) kt.scale(c.data() + l * g.n_v(), e, g.n_v());
  }
}

void axpy(SliceFields& y, double a, const SliceFields& x) {
  const auto& kt = kernels::active();
  for (std::size_t c = 0; c < y.size(); ++c) kt.axpy(y[c].data(), a, x[c].data(), y[c].size());
}

// Per-slice ||grad_h u^h||^2 (u components only).
std::vector<double> slice_dissipation(const SliceFields& s, const SliceWorkspace& ws) {
  const Grid& g = ws.grid;
  std::vector<double> d(g.n_v(), 0.0);
  for (std::size_t l = 0; l < g.lines(); ++l) {
    if (ws.kh2[l] == 0.0) continue;
    for (int c = 0; c < 2; ++c) {
      const Complex* line = s[c].data() + l * g.n_v();
      for (int i3 = 0; i3 < g.n_v(); ++i3) d[i3] += ws.kh2[l] * std::norm(line[i3]);
    }
  }
  for (double& x : d) x *= kArea;
  return d;
}

SliceFields zeros_like(const SliceFields& s) {
  SliceFields z;
  for (const auto& c : s) z.emplace_back(c.grid());
  return z;
}

// One integrating-factor step; `diss` accumulates per-slice dissipation.
SliceFields slice_step(const SliceFields& un, const StepperConfig& cfg, std::vector<double>* diss) {
  const Grid& g = un[0].grid();
  SliceWorkspace& ws = workspace(g);
  const double h = cfg.dt;
  SliceFields k1 = zeros_like(un);
  const double speed = slice_nonlinear(un, k1, cfg.dealias, ws);
  const double bound = speed > 0.0 ? cfg.cfl * g.spacing_h() / speed
                                   : std::numeric_limits<double>::infinity();
  if (h > bound) throw CflViolation(h, 0.9 * bound);

  auto accumulate = [&](const SliceFields& s, double w) {
    if (!diss) return;
    const auto d = slice_dissipation(s, ws);
    for (std::size_t i = 0; i < d.size(); ++i) (*diss)[i] += w * d[i];
  };

  if (cfg.scheme == Scheme::if_rk2) {
    SliceFields ua = un;
    axpy(ua, h, k1);
    semigroup(ua, h, ws);
    SliceFields k2 = zeros_like(un);
    slice_nonlinear(ua, k2, cfg.dealias, ws);
    accumulate(un, 0.5 * h);
    accumulate(ua, 0.5 * h);
    SliceFields next = un;
    axpy(next, 0.5 * h, k1);
    semigroup(next, h, ws);
    axpy(next, 0.5 * h, k2);
    return next;
  }

  SliceFields ua = un;
  axpy(ua, 0.5 * h, k1);
  semigroup(ua, 0.5 * h, ws);
  SliceFields k2 = zeros_like(un);
  slice_nonlinear(ua, k2, cfg.dealias, ws);

  SliceFields eh2_un = un;
  semigroup(eh2_un, 0.5 * h, ws);
  SliceFields ub = eh2_un;
  axpy(ub, 0.5 * h, k2);
  SliceFields k3 = zeros_like(un);
  slice_nonlinear(ub, k3, cfg.dealias, ws);

  SliceFields uc = k3;
  semigroup(uc, 0.5 * h, ws);
  for (auto& c : uc) kernels::active().scale(c.data(), h, c.size());
  SliceFields eh_un = eh2_un;
  semigroup(eh_un, 0.5 * h, ws);
  axpy(uc, 1.0, eh_un);
  SliceFields k4 = zeros_like(un);
  slice_nonlinear(uc, k4, cfg.dealias, ws);

  accumulate(un, h / 6.0);
  accumulate(ua, h / 3.0);
  accumulate(ub, h / 3.0);
  accumulate(uc, h / 6.0);

  SliceFields next = un;
  axpy(next, h / 6.0, k1);
  semigroup(next, h, ws);
  SliceFields mid = k2;
  axpy(mid, 1.0, k3);
  semigroup(mid, 0.5 * h, ws);
  axpy(next, h / 3.0, mid);
  axpy(next, h / 6.0, k4);
  return next;
}

std::vector<std::size_t> snapshot_steps(const StepperConfig& cfg) {
  std::vector<std::size_t> steps;
  for (std::size_t k = 0; k <= cfg.steps(); ++k)
    if (cfg.is_snapshot_step(k)) steps.push_back(k);
  return steps;
}

}  // namespace

SpectralField hybrid_from_spectral(const SpectralField& f) {
  const Grid& g = f.grid();
  ComplexVec buf(f.data(), f.data() + f.size());
  fft::transform_v(buf.data(), g, fft::Dir::backward);
  SpectralField h(g);
  std::copy(buf.begin(), buf.end(), h.data());
  return h;
}

SpectralField spectral_from_hybrid(const SpectralField& h) {
  const Grid& g = h.grid();
  ComplexVec buf(h.data(), h.data() + h.size());
  fft::transform_v(buf.data(), g, fft::Dir::forward);
  SpectralField f(g);
  std::copy(buf.begin(), buf.end(), f.data());
  kernels::active().scale(f.data(), 1.0 / g.n_v(), f.size());
  return f;
}

SliceEnsemble slices_from_spectral(const SpectralField& u1, const SpectralField& u2, double t) {
  return {hybrid_from_spectral(u1), hybrid_from_spectral(u2), t};
}

std::array<SpectralField, 2> slices_to_spectral(const SliceEnsemble& s) {
  return {spectral_from_hybrid(s.u1), spectral_from_hybrid(s.u2)};
}

double slice_divergence_defect(const SliceEnsemble& s) {
  const Grid& g = s.grid();
  double worst = 0.0;
  for (int i3 = 0; i3 < g.n_v(); ++i3) {
    double div = 0.0, scale1 = 0.0, scale2 = 0.0;
    for (int i1 = 0; i1 < g.n_h(); ++i1)
      for (int i2 = 0; i2 < g.n_h(); ++i2) {
        const Complex a = s.u1.at(i1, i2, i3), b = s.u2.at(i1, i2, i3);
        const double k1 = g.dxi_h(i1), k2 = g.dxi_h(i2);
        div += std::norm(k1 * a + k2 * b);
        scale1 += std::norm(k1 * a);
        scale2 += std::norm(k2 * b);
      }
    const double scale = std::sqrt(scale1) + std::sqrt(scale2);
    if (scale > 0.0) worst = std::max(worst, std::sqrt(div) / scale);
  }
  return worst;
}

std::vector<double> slice_energies(const SliceEnsemble& s) {
  const Grid& g = s.grid();
  std::vector<double> e(g.n_v(), 0.0);
  for (std::size_t l = 0; l < g.lines(); ++l)
    for (int i3 = 0; i3 < g.n_v(); ++i3)
      e[i3] += std::norm(s.u1.data()[l * g.n_v() + i3]) + std::norm(s.u2.data()[l * g.n_v() + i3]);
  for (double& x : e) x *= kArea;
  return e;
}

double vertical_shear_fraction(const SpectralField& f) {
  const Grid& g = f.grid();
  double shear = 0.0, total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) total += std::norm(f.data()[i]);
  for (int i3 = 1; i3 < g.n_v(); ++i3) shear += std::norm(f.at(0, 0, i3));
  return total > 0.0 ? std::sqrt(shear / total) : 0.0;
}

SliceTrajectory solve_ns2d_slices(const SliceEnsemble& initial, const StepperConfig& cfg) {
  cfg.validate();
  if (!(initial.u1.grid() == initial.u2.grid())) throw std::invalid_argument("slice components on different grids");
  if (slice_divergence_defect(initial) > 1e-8)
    throw std::invalid_argument("slice data are not divergence-free");
  SliceTrajectory traj;
  traj.cfg = cfg;
  traj.dissipation.assign(initial.grid().n_v(), 0.0);
  SliceFields s{initial.u1, initial.u2};
  traj.snapshots.push_back({s[0], s[1], 0.0});
  const std::size_t n = cfg.steps();
  for (std::size_t k = 1; k <= n; ++k) {
    s = slice_step(s, cfg, &traj.dissipation);
    if (cfg.is_snapshot_step(k))
      traj.snapshots.push_back({s[0], s[1], static_cast<double>(k) * cfg.dt});
  }
  return traj;
}

std::vector<SpectralField> solve_transport_w3(const SliceTrajectory& uh, const SpectralField& w3_0,
                                              const StepperConfig& cfg) {
  cfg.validate();
  const auto steps = snapshot_steps(cfg);
  if (uh.snapshots.size() != steps.size())
    throw std::invalid_argument("slice trajectory does not match the stepper configuration");
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const double expected = static_cast<double>(steps[s]) * cfg.dt;
    if (std::abs(uh.snapshots[s].t - expected) > 1e-9 * std::max(1.0, expected))
      throw std::invalid_argument("slice trajectory times are misaligned with dt and stride");
  }
  if (!(w3_0.grid() == uh.snapshots[0].grid()))
    throw std::invalid_argument("w3 and the slice trajectory live on different grids");

  std::vector<SpectralField> out;
  out.push_back(w3_0);
  SpectralField w = hybrid_from_spectral(w3_0);
  for (std::size_t s = 0; s + 1 < steps.size(); ++s) {
    SliceFields joint{uh.snapshots[s].u1, uh.snapshots[s].u2, w};
    for (std::size_t k = steps[s]; k < steps[s + 1]; ++k) joint = slice_step(joint, cfg, nullptr);
    const SliceEnsemble& next = uh.snapshots[s + 1];
    const auto& kt = kernels::active();
    SpectralField d1 = joint[0] - next.u1, d2 = joint[1] - next.u2;
    const double mismatch = std::sqrt(kt.norm2(d1.data(), d1.size()) + kt.norm2(d2.data(), d2.size()));
    const double scale = std::sqrt(kt.norm2(next.u1.data(), next.u1.size()) +
                                   kt.norm2(next.u2.data(), next.u2.size()));
    if (mismatch > 1e-12 * std::max(scale, 1e-300))
      throw std::invalid_argument("slice trajectory was not produced with this stepper configuration");
    w = joint[2];
    out.push_back(spectral_from_hybrid(w));
  }
  return out;
}

}  // namespace anivisc
