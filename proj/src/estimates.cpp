#include "anivisc/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "anivisc/approx.hpp"
#include "anivisc/random_fields.hpp"
#include "anivisc/spectral_ops.hpp"

namespace anivisc::est {
namespace {

using lp::Axis;

// Running L^p accumulator with weight `w` per sample.
struct LpAcc {
  double p;
  double acc = 0.0;
  void add(double x, double w) {
    x = std::abs(x);
    if (std::isinf(p))
      acc = std::max(acc, x);
    else
      acc += w * std::pow(x, p);
  }
  double value() const { return std::isinf(p) ? acc : std::pow(acc, 1.0 / p); }
};

double max_coeff(const SpectralField& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f.data()[i]));
  return m;
}

// Largest |xi3| (or |xi_h|) carried by a coefficient above roundoff.
double support_edge(const SpectralField& f, Axis axis, bool lowest) {
  const Grid& g = f.grid();
  const double floor = 1e-12 * max_coeff(f);
  double edge = lowest ? INFINITY : 0.0;
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2)
      for (int i3 = 0; i3 < g.n_v(); ++i3) {
        if (std::abs(f.at(i1, i2, i3)) <= floor) continue;
        const double t = axis == Axis::vertical ? std::abs(g.xi_v(i3))
                                                : std::hypot(g.xi_h(i1), g.xi_h(i2));
        edge = lowest ? std::min(edge, t) : std::max(edge, t);
      }
  return edge;
}

std::uint64_t seed_of(const std::vector<std::uint64_t>& seeds, std::size_t i) {
  return i < seeds.size() ? seeds[i] : 0;
}

SpectralField dn3(SpectralField f, int alpha) {
  for (int k = 0; k < alpha; ++k) f = derivative(f, 3);
  return f;
}

// (P_q f | P_q g) with P_q the vertical block multiplier, for scalar fields.
std::vector<double> vertical_block_weights(const Grid& g, int q) {
  std::vector<double> w(g.n_v());
  for (int i3 = 0; i3 < g.n_v(); ++i3) w[i3] = lp::block_weight(q, std::abs(g.xi_v(i3)));
  return w;
}

double weighted_inner(const SpectralField& f, const SpectralField& g, const std::vector<double>& w2) {
  const Grid& gr = f.grid();
  double s = 0.0;
  for (std::size_t line = 0; line < gr.lines(); ++line) {
    const std::size_t off = line * gr.n_v();
    for (int i3 = 0; i3 < gr.n_v(); ++i3) {
      const Complex a = f.data()[off + i3], b = g.data()[off + i3];
      s += w2[i3] * (a.real() * b.real() + a.imag() * b.imag());
    }
  }
  return gr.volume() * s;
}

VectorField advect_vec(const VectorField& a, const VectorField& b) {
  return {advect(a, b[0]), advect(a, b[1]), advect(a, b[2])};
}

// Integrates samples y over t: Simpson on uniform grids, trapezoid otherwise.
double integrate(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  if (n < 2) return 0.0;
  const double h = t[1] - t[0];
  bool uniform = true;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs((t[i] - t[i - 1]) - h) > 1e-9 * std::abs(h)) uniform = false;
  const std::size_t intervals = n - 1;
  if (!uniform || intervals < 2) {
    double s = 0.0;
    for (std::size_t i = 1; i < n; ++i) s += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
    return s;
  }
  auto simpson = [&](std::size_t a, std::size_t b) {
    double s = y[a] + y[b];
    for (std::size_t i = a + 1; i < b; ++i) s += ((i - a) % 2 ? 4.0 : 2.0) * y[i];
    return s * h / 3.0;
  };
  if (intervals % 2 == 0) return simpson(0, n - 1);
  // odd count: Simpson 3/8 on the last three intervals
  const std::size_t a = n - 4;
  const double tail = 3.0 * h / 8.0 * (y[a] + 3 * y[a + 1] + 3 * y[a + 2] + y[a + 3]);
  return (a > 0 ? simpson(0, a) : 0.0) + tail;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) s += 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

void check_window(std::size_t n, std::size_t first, std::size_t last) {
  if (n == 0 || first >= last || last >= n)
    throw std::invalid_argument("snapshot window must satisfy first < last < count");
}

const lp::BesovSpec kB0{0.0, 0.5, lp::BesovKind::vertical};
const lp::BesovSpec kB1{1.0, 0.5, lp::BesovKind::anisotropic};

}  // namespace

void RatioReport::add(int index, std::uint64_t seed, double lhs, double rhs) {
  if (!(rhs > 0.0)) {
    if (lhs == 0.0) {
      ++filtered;
      return;
    }
    throw std::domain_error(id + ": right-hand side vanishes for a nonzero left-hand side");
  }
  samples.push_back({index, seed, lhs, rhs, lhs / rhs});
}

void RatioReport::merge(const RatioReport& other) {
  samples.insert(samples.end(), other.samples.begin(), other.samples.end());
  filtered += other.filtered;
}

double RatioReport::max_ratio() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.ratio);
  return m;
}

std::vector<std::pair<int, double>> RatioReport::index_maxima() const {
  std::map<int, double> m;
  for (const auto& s : samples) {
    auto [it, fresh] = m.emplace(s.index, s.ratio);
    if (!fresh) it->second = std::max(it->second, s.ratio);
  }
  return {m.begin(), m.end()};
}

double RatioReport::spread() const {
  const auto mx = index_maxima();
  if (mx.empty()) return 0.0;
  double lo = INFINITY, hi = 0.0;
  for (const auto& [i, r] : mx) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return lo > 0.0 ? hi / lo : INFINITY;
}

std::string describe(const Grid& g) {
  return std::to_string(g.n_h()) + "x" + std::to_string(g.n_h()) + "x" + std::to_string(g.n_v()) +
         ", m=" + std::to_string(g.m());
}

double mixed_norm(const SpectralField& f, Axis inner, double p_inner, double p_outer, int oversample) {
  const Grid& g = f.grid();
  if (p_inner == 2.0 && p_outer == 2.0) oversample = 1;  // Parseval: the grid sum is exact
  const SpectralField fine = oversample > 1 ? resample(f, g.n_h() * oversample, g.n_v() * oversample) : f;
  const Grid& gf = fine.grid();
  const RealVec v = inverse_transform(fine);
  const int nh = gf.n_h(), nv = gf.n_v();
  const double da = (gf.len_h() / nh) * (gf.len_h() / nh);
  const double dz = gf.len_v() / nv;
  LpAcc outer{p_outer};
  if (inner == Axis::vertical) {
    for (std::size_t line = 0; line < gf.lines(); ++line) {
      LpAcc in{p_inner};
      for (int i3 = 0; i3 < nv; ++i3) in.add(v[line * nv + i3], dz);
      outer.add(in.value(), da);
    }
  } else {
    for (int i3 = 0; i3 < nv; ++i3) {
      LpAcc in{p_inner};
      for (std::size_t line = 0; line < gf.lines(); ++line) in.add(v[line * nv + i3], da);
      outer.add(in.value(), dz);
    }
  }
  return outer.value();
}

std::vector<SpectralField> vertical_band_samples(const Grid& g, double v_min, double v_max,
                                                 std::size_t n, std::uint64_t seed0) {
  std::vector<SpectralField> out;
  for (std::size_t i = 0; i < n; ++i) {
    SpectralField f = gaussian_field(g, {0.0, 2.0, v_min, v_max}, seed0 + i);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<SpectralField> horizontal_band_samples(const Grid& g, double h_min, double h_max,
                                                   std::size_t n, std::uint64_t seed0) {
  std::vector<SpectralField> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(gaussian_field(g, {h_min, h_max, 0.0, 2.0}, seed0 + i));
  return out;
}

RatioReport check_bernstein_vertical(const std::vector<SpectralField>& samples, int q, int alpha,
                                     double p1, double p2, const std::vector<std::uint64_t>& seeds) {
  if (!(p2 <= p1) || p2 < 1.0 || alpha < 0) throw std::invalid_argument("need 1 <= p2 <= p1 and alpha >= 0");
  RatioReport rep{"bernstein.vertical", {}, {}, 0};
  const double scale = std::exp2(q * (alpha + 1.0 / p2 - (std::isinf(p1) ? 0.0 : 1.0 / p1)));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SpectralField& a = samples[i];
    rep.grid = describe(a.grid());
    if (max_coeff(a) == 0.0) throw std::invalid_argument("zero sample");
    if (support_edge(a, Axis::vertical, false) > std::ldexp(1.0, q) * (1 + 1e-12))
      throw std::invalid_argument("sample is not supported in the vertical ball of radius 2^q");
    const double lhs = mixed_norm(dn3(a, alpha), Axis::vertical, p1, 2.0);
    const double rhs = scale * mixed_norm(a, Axis::vertical, p2, 2.0);
    rep.add(q, seed_of(seeds, i), lhs, rhs);
  }
  return rep;
}

RatioReport check_inverse_bernstein(const std::vector<SpectralField>& samples, int q, double p,
                                    const std::vector<std::uint64_t>& seeds) {
  RatioReport rep{"bernstein.inverse", {}, {}, 0};
  const double lo = std::ldexp(1.0, q), hi = std::ldexp(1.0, q + 1);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SpectralField& a = samples[i];
    rep.grid = describe(a.grid());
    if (max_coeff(a) == 0.0) throw std::invalid_argument("zero sample");
    if (support_edge(a, Axis::vertical, true) < lo * (1 - 1e-12) ||
        support_edge(a, Axis::vertical, false) > hi * (1 + 1e-12))
      throw std::invalid_argument("sample is not supported in the vertical ring at scale 2^q");
    const double lhs = mixed_norm(a, Axis::vertical, p, 2.0);
    const double rhs = std::ldexp(1.0, -q) * mixed_norm(derivative(a, 3), Axis::vertical, p, 2.0);
    rep.add(q, seed_of(seeds, i), lhs, rhs);
  }
  return rep;
}

RatioReport check_bernstein_horizontal(const std::vector<SpectralField>& samples, int j, double p1,
                                       double p2, const std::vector<std::uint64_t>& seeds) {
  if (!(p2 <= p1) || p2 < 1.0) throw std::invalid_argument("need 1 <= p2 <= p1");
  RatioReport rep{"bernstein.horizontal", {}, {}, 0};
  const double scale = std::exp2(2.0 * j * (1.0 / p2 - (std::isinf(p1) ? 0.0 : 1.0 / p1)));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SpectralField& a = samples[i];
    rep.grid = describe(a.grid());
    if (max_coeff(a) == 0.0) throw std::invalid_argument("zero sample");
    if (support_edge(a, Axis::horizontal, false) > std::ldexp(1.0, j) * (1 + 1e-12))
      throw std::invalid_argument("sample is not supported in the horizontal ball of radius 2^j");
    const double lhs = mixed_norm(a, Axis::horizontal, p1, 2.0);
    const double rhs = scale * mixed_norm(a, Axis::horizontal, p2, 2.0);
    rep.add(j, seed_of(seeds, i), lhs, rhs);
  }
  return rep;
}

std::vector<SpectralField> horizontal_gradient(const VectorField& v) {
  std::vector<SpectralField> out;
  for (int c = 0; c < 3; ++c) {
    out.push_back(derivative(v[c], 1));
    out.push_back(derivative(v[c], 2));
  }
  return out;
}

RatioReport check_estimate11(const std::vector<SpectralField>& samples, double s, int index,
                             const std::vector<std::uint64_t>& seeds) {
  RatioReport rep{"estimate11", {}, {}, 0};
  const lp::BesovSpec vert{0.0, s, lp::BesovKind::vertical};
  const lp::BesovSpec aniso{1.0, s, lp::BesovKind::anisotropic};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SpectralField& a = samples[i];
    rep.grid = describe(a.grid());
    const SpectralField grad[2] = {derivative(a, 1), derivative(a, 2)};
    const SpectralField* comps[2] = {&grad[0], &grad[1]};
    double lhs = 0.0;
    for (double x : lp::weighted_block_norms(comps, 2, vert)) lhs += x;
    const lp::DyadicDecomposition d = lp::decompose(a, Axis::vertical);
    lhs += linf_h_l2_v(d.mean);
    for (int q = d.range.lo; q <= d.range.hi; ++q) lhs += std::exp2(q * s) * linf_h_l2_v(d.block(q));
    rep.add(index, seed_of(seeds, i), lhs, lp::besov_norm(a, aniso));
  }
  return rep;
}

SpectralField padded_product(const SpectralField& a, const SpectralField& b) {
  const Grid& g = a.grid();
  return product(resample(a, 2 * g.n_h(), 2 * g.n_v()), resample(b, 2 * g.n_h(), 2 * g.n_v()), false);
}

std::vector<RatioReport> check_product_laws(const std::vector<std::pair<SpectralField, SpectralField>>& pairs,
                                            double s, int index, const std::vector<std::uint64_t>& seeds) {
  if (s < 0.5) throw std::invalid_argument("the first product law needs s >= 1/2");
  std::vector<RatioReport> reps{{"product.B1s_algebra", {}, {}, 0},
                                {"product.B0s_half_half", {}, {}, 0},
                                {"product.B0s_one_zero", {}, {}, 0}};
  const lp::BesovSpec b1{1.0, s, lp::BesovKind::anisotropic};
  const lp::BesovSpec bh{0.5, s, lp::BesovKind::anisotropic};
  const lp::BesovSpec b0{0.0, s, lp::BesovKind::anisotropic};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [a, b] = pairs[i];
    for (auto& r : reps) r.grid = describe(a.grid());
    const SpectralField ab = padded_product(a, b);
    const std::uint64_t sd = seed_of(seeds, i);
    reps[0].add(index, sd, lp::besov_norm(ab, b1), lp::besov_norm(a, b1) * lp::besov_norm(b, b1));
    reps[1].add(index, sd, lp::besov_norm(ab, b0), lp::besov_norm(a, bh) * lp::besov_norm(b, bh));
    reps[2].add(index, sd, lp::besov_norm(ab, b0), lp::besov_norm(a, b1) * lp::besov_norm(b, b0));
  }
  return reps;
}

double block_inner(const VectorField& f, const VectorField& g, int q) {
  auto w = vertical_block_weights(f[0].grid(), q);
  for (double& x : w) x *= x;
  double s = 0.0;
  for (int c = 0; c < 3; ++c) s += weighted_inner(f[c], g[c], w);
  return s;
}

BlockEnergyTerms check_block_energy_balance(const RemainderTrajectory& traj, int q, std::size_t first,
                                            std::size_t last) {
  check_window(traj.r.size(), first, last);
  if (traj.times.size() != traj.r.size() || traj.uapp.size() != traj.r.size() ||
      traj.forcing.size() != traj.r.size())
    throw std::invalid_argument("remainder trajectory components have different lengths");
  const Grid& g = traj.r[first][0].grid();
  const lp::IndexRange range = lp::index_range(g, Axis::vertical);
  if (q < range.lo || q > range.hi) throw std::out_of_range("block index outside the grid's range");

  std::vector<double> w2 = vertical_block_weights(g, q);
  for (double& x : w2) x *= x;
  std::vector<double> t, diss, rr, ur, ru, fo;
  for (std::size_t k = first; k <= last; ++k) {
    const VectorField& r = traj.r[k];
    const VectorField& ua = traj.uapp[k];
    t.push_back(traj.times[k]);
    double d = 0.0;
    for (const auto& c : horizontal_gradient(r)) d += weighted_inner(c, c, w2);
    diss.push_back(d);
    rr.push_back(block_inner(advect_vec(r, r), r, q));
    ur.push_back(block_inner(advect_vec(ua, r), r, q));
    ru.push_back(block_inner(advect_vec(r, ua), r, q));
    fo.push_back(block_inner(traj.forcing[k], r, q));
  }
  BlockEnergyTerms e;
  e.energy_start = 0.5 * block_inner(traj.r[first], traj.r[first], q);
  e.energy_end = 0.5 * block_inner(traj.r[last], traj.r[last], q);
  e.dissipation = integrate(t, diss);
  e.rr = integrate(t, rr);
  e.ur = integrate(t, ur);
  e.ru = integrate(t, ru);
  e.force = integrate(t, fo);
  e.residual = e.energy_end - e.energy_start + e.dissipation + e.rr + e.ur + e.ru + e.force;
  const double mag = e.energy_start + e.energy_end + e.dissipation + std::abs(e.rr) + std::abs(e.ur) +
                     std::abs(e.ru) + std::abs(e.force);
  e.relative = mag > 0.0 ? std::abs(e.residual) / mag : 0.0;
  return e;
}

namespace {

double cl(const std::vector<VectorField>& f, const std::vector<double>& times, std::size_t first,
          std::size_t last, bool gradient, double r) {
  const Grid& g = f[first][0].grid();
  lp::NormTimeSeries s = lp::make_series(g, kB0);
  for (std::size_t k = first; k <= last; ++k) {
    if (gradient) {
      const auto gr = horizontal_gradient(f[k]);
      const SpectralField* p[6];
      for (int c = 0; c < 6; ++c) p[c] = &gr[c];
      s.append(times[k], lp::weighted_block_norms(p, 6, kB0));
    } else {
      s.append(times[k], f[k]);
    }
  }
  return lp::chemin_lerner_norm(s, r);
}

TrilinearReport finish(RatioReport rep, const std::vector<std::vector<double>>& per_q_integrand,
                       const std::vector<double>& t, const lp::IndexRange& range, double base) {
  TrilinearReport out;
  for (int q = range.lo; q <= range.hi; ++q) {
    const double lhs = std::ldexp(trapezoid(t, per_q_integrand[q - range.lo]), q);
    rep.add(q, 0, lhs, base);
  }
  for (const auto& s : rep.samples) out.sqrt_sum += std::sqrt(s.ratio);
  out.ratios = std::move(rep);
  return out;
}

}  // namespace

TrilinearReport check_trilinear(Trilinear kind, const std::vector<VectorField>& u,
                                const std::vector<VectorField>& v_in, const std::vector<double>& times,
                                std::size_t first, std::size_t last) {
  const std::vector<VectorField>& v = kind == Trilinear::rr ? u : v_in;
  check_window(u.size(), first, last);
  if (v.size() != u.size() || times.size() != u.size())
    throw std::invalid_argument("trajectories and times have different lengths");
  const Grid& g = u[first][0].grid();
  const lp::IndexRange range = lp::index_range(g, Axis::vertical);
  std::vector<std::vector<double>> integrand(range.count());
  std::vector<double> t;
  for (std::size_t k = first; k <= last; ++k) {
    t.push_back(times[k]);
    const VectorField adv = advect_vec(u[k], v[k]);
    for (int q = range.lo; q <= range.hi; ++q)
      integrand[q - range.lo].push_back(std::abs(block_inner(adv, v[k], q)));
  }
  double base;
  const double v_inf = cl(v, times, first, last, false, INFINITY);
  const double gv = cl(v, times, first, last, true, 2.0);
  if (kind == Trilinear::rr) {
    base = gv * gv * v_inf;
  } else {
    const double u_inf = cl(u, times, first, last, false, INFINITY);
    const double gu = cl(u, times, first, last, true, 2.0);
    base = std::sqrt(v_inf) * gv * (std::sqrt(gv * u_inf * gu) + gu * std::sqrt(v_inf));
  }
  RatioReport rep{kind == Trilinear::rr ? "trilinear.RR" : "trilinear.uR", describe(g), {}, 0};
  return finish(std::move(rep), integrand, t, range, base);
}

TrilinearReport check_jq(const RemainderTrajectory& traj, std::size_t first, std::size_t last) {
  check_window(traj.r.size(), first, last);
  const Grid& g = traj.r[first][0].grid();
  const lp::IndexRange range = lp::index_range(g, Axis::vertical);
  std::vector<std::vector<double>> integrand(range.count());
  std::vector<double> t;
  lp::NormTimeSeries d3u = lp::make_series(g, kB1);
  for (std::size_t k = first; k <= last; ++k) {
    t.push_back(traj.times[k]);
    const VectorField& r = traj.r[k];
    const VectorField& ua = traj.uapp[k];
    const VectorField prod{product(r[2], ua[0]), product(r[2], ua[1]), product(r[2], ua[2])};
    const VectorField d3r{derivative(r[0], 3), derivative(r[1], 3), derivative(r[2], 3)};
    for (int q = range.lo; q <= range.hi; ++q)
      integrand[q - range.lo].push_back(std::abs(block_inner(prod, d3r, q)));
    d3u.append(traj.times[k], VectorField{derivative(ua[0], 3), derivative(ua[1], 3), derivative(ua[2], 3)});
  }
  const double r_inf = cl(traj.r, traj.times, first, last, false, INFINITY);
  const double base = r_inf * r_inf * lp::chemin_lerner_norm(d3u, 1.0);
  RatioReport rep{"trilinear.Jq", describe(g), {}, 0};
  return finish(std::move(rep), integrand, t, range, base);
}

}  // namespace anivisc::est
