#include "anivisc/nsh_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "anivisc/fft.hpp"
#include "anivisc/kernels.hpp"
#include "anivisc/parallel.hpp"
#include "anivisc/spectral_ops.hpp"

namespace anivisc {
namespace {

constexpr int kPairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
// Flux slots entering the divergence of each velocity component.
constexpr int kRows[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};

struct Workspace {
  Grid grid;
  std::array<ComplexVec, 3> phys;
  std::array<ComplexVec, 6> flux;
  std::vector<double> kv;    // vertical derivative wavenumbers
  std::vector<double> kh2;   // |xi_h|^2 per line
  std::vector<char> keep_line;
  std::vector<char> keep_v;

  void ensure(const Grid& g) {
    if (grid == g && !kv.empty()) return;
    grid = g;
    for (auto& b : phys) b.assign(g.size(), Complex{});
    for (auto& b : flux) b.assign(g.size(), Complex{});
    kv.resize(g.n_v());
    keep_v.resize(g.n_v());
    for (int i3 = 0; i3 < g.n_v(); ++i3) {
      kv[i3] = g.dxi_v(i3);
      keep_v[i3] = std::abs(g.k_v(i3)) <= g.dealias_v();
    }
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

Workspace& workspace(const Grid& g) {
  thread_local Workspace ws;
  ws.ensure(g);
  return ws;
}

void dealias_buffer(Complex* c, const Workspace& ws) {
  const Grid& g = ws.grid;
  for (std::size_t l = 0; l < g.lines(); ++l) {
    Complex* line = c + l * g.n_v();
    if (!ws.keep_line[l]) {
      std::fill(line, line + g.n_v(), Complex{});
      continue;
    }
    for (int i3 = 0; i3 < g.n_v(); ++i3)
      if (!ws.keep_v[i3]) line[i3] = Complex{};
  }
}

// out = -P div(u (x) u); returns max |u| over the grid.
double nonlinear(const VectorField& u, VectorField& out, bool dealias, Workspace& ws) {
  const Grid& g = u[0].grid();
  const auto& kt = kernels::active();
  const std::size_t n = g.size();
  for (int c = 0; c < 3; ++c) {
    std::copy(u[c].data(), u[c].data() + n, ws.phys[c].data());
    fft::transform3d(ws.phys[c].data(), g, fft::Dir::backward);
  }
  double max_speed2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = ws.phys[0][i].real(), b = ws.phys[1][i].real(), c = ws.phys[2][i].real();
    max_speed2 = std::max(max_speed2, a * a + b * b + c * c);
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int p = 0; p < 6; ++p) {
    Complex* f = ws.flux[p].data();
    kt.mul_real(f, ws.phys[kPairs[p][0]].data(), ws.phys[kPairs[p][1]].data(), n);
    fft::transform3d(f, g, fft::Dir::forward);
    kt.scale(f, inv_n, n);
    if (dealias) dealias_buffer(f, ws);
  }
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2) {
      const std::size_t off = g.index(i1, i2, 0);
      for (int c = 0; c < 3; ++c) {
        const int* r = kRows[c];
        kt.neg_i_div(out[c].data() + off, ws.flux[r[0]].data() + off, ws.flux[r[1]].data() + off,
                     ws.flux[r[2]].data() + off, g.dxi_h(i1), g.dxi_h(i2), ws.kv.data(), g.n_v());
      }
    }
  leray_project_inplace(out);
  return std::sqrt(max_speed2);
}

// v <- e^{tau Delta_h} v, one exponential per horizontal line.
void semigroup(VectorField& v, double tau, const Workspace& ws) {
  const Grid& g = v[0].grid();
  const auto& kt = kernels::active();
  for (std::size_t l = 0; l < g.lines(); ++l) {
    const double e = std::exp(-ws.kh2[l] * tau);
    for (auto& c : v) kt.scale(c.data() + l * g.n_v(), e, g.n_v());
  }
}

double dissipation(const VectorField& u, const Workspace& ws) {
  const Grid& g = u[0].grid();
  const auto& kt = kernels::active();
  double acc = 0.0;
  for (std::size_t l = 0; l < g.lines(); ++l) {
    if (ws.kh2[l] == 0.0) continue;
    double line = 0.0;
    for (const auto& c : u) line += kt.norm2(c.data() + l * g.n_v(), g.n_v());
    acc += ws.kh2[l] * line;
  }
  return g.volume() * acc;
}

// y += a x, componentwise
void axpy(VectorField& y, double a, const VectorField& x) {
  const auto& kt = kernels::active();
  for (int c = 0; c < 3; ++c) kt.axpy(y[c].data(), a, x[c].data(), y[c].size());
}

}  // namespace

std::size_t StepperConfig::steps() const {
  return static_cast<std::size_t>(std::llround(t_end / dt));
}

void StepperConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
  if (snapshot_stride < 1) throw std::invalid_argument("snapshot_stride must be >= 1");
  if (!(cfl > 0.0)) throw std::invalid_argument("cfl factor must be positive");
  const double n = t_end / dt;
  if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n))
    throw std::invalid_argument("t_end must be a whole number of time steps");
}

bool StepperConfig::is_snapshot_step(std::size_t k) const {
  return k % static_cast<std::size_t>(snapshot_stride) == 0 || k == steps();
}

std::size_t StepperConfig::snapshot_count() const {
  const std::size_t n = steps();
  const std::size_t s = static_cast<std::size_t>(snapshot_stride);
  return n / s + 1 + (n % s != 0 ? 1 : 0);
}

CflViolation::CflViolation(double dt, double advisory_dt)
    : std::runtime_error("CFL violation: dt=" + std::to_string(dt) + " exceeds the advective bound; try dt <= " +
                         std::to_string(advisory_dt)),
      advisory_(advisory_dt) {}

double kinetic_energy(const VectorField& u) {
  const double n = l2_norm(u);
  return 0.5 * n * n;
}

double horizontal_dissipation(const VectorField& u) {
  return dissipation(u, workspace(u[0].grid()));
}

double divergence_defect(const VectorField& u) {
  double scale = 0.0;
  for (int c = 0; c < 3; ++c) scale += l2_norm(derivative(u[c], c + 1));
  if (scale == 0.0) return 0.0;
  return l2_norm(divergence(u)) / scale;
}

VectorField prepare_initial_velocity(const VectorField& u0) {
  const auto& kt = kernels::active();
  for (const auto& c : u0) {
    const double norm = std::sqrt(kt.norm2(c.data(), c.size()));
    if (std::abs(c.at(0, 0, 0)) > 1e-12 * norm)
      throw std::invalid_argument("initial velocity must have zero mean");
  }
  if (divergence_defect(u0) > 1e-8)
    throw std::invalid_argument("initial velocity is not divergence-free");
  VectorField u = u0;
  leray_project_inplace(u);
  return u;
}

StepOutcome step_nsh_tracked(const VelocityState& state, const StepperConfig& cfg) {
  const Grid& g = state.u[0].grid();
  Workspace& ws = workspace(g);
  const double h = cfg.dt;
  const VectorField& un = state.u;

  VectorField k1 = zeros(g);
  const double speed = nonlinear(un, k1, cfg.dealias, ws);
  const double bound = speed > 0.0 ? cfg.cfl * std::min(g.spacing_h(), g.spacing_v()) / speed
                                   : std::numeric_limits<double>::infinity();
  if (h > bound) throw CflViolation(h, 0.9 * bound);

  StepOutcome out;
  out.max_speed = speed;
  const double d_n = dissipation(un, ws);

  if (cfg.scheme == Scheme::if_rk2) {
    VectorField ua = un;
    axpy(ua, h, k1);
    semigroup(ua, h, ws);
    VectorField k2 = zeros(g);
    nonlinear(ua, k2, cfg.dealias, ws);
    const double d_a = dissipation(ua, ws);
    VectorField next = un;
    axpy(next, 0.5 * h, k1);
    semigroup(next, h, ws);
    axpy(next, 0.5 * h, k2);
    out.state = {std::move(next), state.t + h};
    out.dissipation = 0.5 * h * (d_n + d_a);
    return out;
  }

  VectorField ua = un;
  axpy(ua, 0.5 * h, k1);
  semigroup(ua, 0.5 * h, ws);
  VectorField k2 = zeros(g);
  nonlinear(ua, k2, cfg.dealias, ws);
  const double d_a = dissipation(ua, ws);

  VectorField eh2_un = un;
  semigroup(eh2_un, 0.5 * h, ws);
  VectorField ub = eh2_un;
  axpy(ub, 0.5 * h, k2);
  VectorField k3 = zeros(g);
  nonlinear(ub, k3, cfg.dealias, ws);
  const double d_b = dissipation(ub, ws);

  VectorField uc = k3;
  semigroup(uc, 0.5 * h, ws);
  for (int c = 0; c < 3; ++c) kernels::active().scale(uc[c].data(), h, uc[c].size());
  VectorField eh_un = eh2_un;
  semigroup(eh_un, 0.5 * h, ws);
  axpy(uc, 1.0, eh_un);
  VectorField k4 = zeros(g);
  nonlinear(uc, k4, cfg.dealias, ws);
  const double d_c = dissipation(uc, ws);

  // E(h)(u_n + h/6 k1) + h/6 (2 E(h/2)(k2 + k3) + k4)
  VectorField next = un;
  axpy(next, h / 6.0, k1);
  semigroup(next, h, ws);
  VectorField mid = k2;
  axpy(mid, 1.0, k3);
  semigroup(mid, 0.5 * h, ws);
  axpy(next, h / 3.0, mid);
  axpy(next, h / 6.0, k4);

  out.state = {std::move(next), state.t + h};
  out.dissipation = h / 6.0 * (d_n + 2.0 * d_a + 2.0 * d_b + d_c);
  return out;
}

VelocityState step_nsh(const VelocityState& state, const StepperConfig& cfg) {
  return step_nsh_tracked(state, cfg).state;
}

NshRunSummary run_nsh(const VectorField& u0, const StepperConfig& cfg,
                      const SnapshotObserver& observer) {
  cfg.validate();
  NshRunSummary sum;
  VelocityState s{prepare_initial_velocity(u0), 0.0};
  sum.initial_energy = kinetic_energy(s.u);
  std::size_t snap = 0;
  if (observer) observer(s, snap++);
  const std::size_t n = cfg.steps();
  for (std::size_t k = 1; k <= n; ++k) {
    StepOutcome o = step_nsh_tracked(s, cfg);
    s = std::move(o.state);
    s.t = static_cast<double>(k) * cfg.dt;
    sum.dissipation += o.dissipation;
    sum.max_divergence = std::max(sum.max_divergence, divergence_defect(s.u));
    if (observer && cfg.is_snapshot_step(k)) observer(s, snap++);
  }
  sum.final_energy = kinetic_energy(s.u);
  sum.steps = n;
  return sum;
}

}  // namespace anivisc
