#include "anivisc/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "anivisc/kernels.hpp"
#include "anivisc/spectral_ops.hpp"

namespace anivisc::lp {
namespace {

double vertical_freq(const Grid& g, int i3) { return std::abs(g.xi_v(i3)); }

double horizontal_freq(const Grid& g, int i1, int i2) {
  return std::hypot(g.xi_h(i1), g.xi_h(i2));
}

std::set<double> axis_freqs(const Grid& g, Axis axis) {
  std::set<double> out;
  if (axis == Axis::vertical) {
    for (int i3 = 0; i3 < g.n_v(); ++i3) out.insert(vertical_freq(g, i3));
  } else {
    for (int i1 = 0; i1 < g.n_h(); ++i1)
      for (int i2 = 0; i2 < g.n_h(); ++i2) out.insert(horizontal_freq(g, i1, i2));
  }
  return out;
}

IndexRange range_of(const std::set<double>& freqs) {
  IndexRange r{std::numeric_limits<int>::max(), std::numeric_limits<int>::min()};
  for (double t : freqs) {
    if (t == 0.0) continue;
    const int base = static_cast<int>(std::floor(std::log2(t)));
    for (int q = base - 3; q <= base + 2; ++q) {
      if (block_weight(q, t) != 0.0) {
        r.lo = std::min(r.lo, q);
        r.hi = std::max(r.hi, q);
      }
    }
  }
  if (r.lo > r.hi) return {};
  return r;
}

template <class W>
SpectralField apply_vertical(const SpectralField& f, W weight) {
  const Grid& g = f.grid();
  std::vector<double> w(g.n_v());
  for (int i3 = 0; i3 < g.n_v(); ++i3) w[i3] = weight(vertical_freq(g, i3));
  SpectralField out(g);
  for (std::size_t line = 0; line < g.lines(); ++line) {
    const std::size_t off = line * g.n_v();
    for (int i3 = 0; i3 < g.n_v(); ++i3) out.data()[off + i3] = w[i3] * f.data()[off + i3];
  }
  return out;
}

template <class W>
SpectralField apply_horizontal(const SpectralField& f, W weight) {
  const Grid& g = f.grid();
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2) {
      const double w = weight(horizontal_freq(g, i1, i2));
      if (w == 0.0) continue;
      const std::size_t off = g.index(i1, i2, 0);
      for (int i3 = 0; i3 < g.n_v(); ++i3) out.data()[off + i3] = w * f.data()[off + i3];
    }
  return out;
}

// Multiplier of a labelled block along one axis; kMean is the indicator of
// frequency zero, kNone the identity.
double label_weight(int index, double t) {
  if (index == kNone) return 1.0;
  if (index == kMean) return t == 0.0 ? 1.0 : 0.0;
  return block_weight(index, t);
}

double time_norm(const NormTimeSeries& s, std::size_t b, double r, std::size_t first,
                 std::size_t last) {
  if (std::isinf(r)) {
    double mx = 0.0;
    for (std::size_t i = first; i <= last; ++i) mx = std::max(mx, s.values[i][b]);
    return mx;
  }
  double acc = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    const double dt = s.times[i + 1] - s.times[i];
    acc += 0.5 * dt * (std::pow(s.values[i][b], r) + std::pow(s.values[i + 1][b], r));
  }
  return std::pow(acc, 1.0 / r);
}

}  // namespace

double chi(double t) {
  t = std::abs(t);
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  const double x = t - 1.0;
  return 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

double block_weight(int q, double t) {
  return chi(std::ldexp(t, -q - 1)) - chi(std::ldexp(t, -q));
}

double lowpass_weight(int q, double t) { return chi(std::ldexp(t, -q)); }

IndexRange index_range(const Grid& g, Axis axis) { return range_of(axis_freqs(g, axis)); }

SpectralField vertical_block(const SpectralField& f, int q) {
  return apply_vertical(f, [q](double t) { return block_weight(q, t); });
}
SpectralField vertical_lowpass(const SpectralField& f, int q) {
  return apply_vertical(f, [q](double t) { return lowpass_weight(q, t); });
}
SpectralField horizontal_block(const SpectralField& f, int j) {
  return apply_horizontal(f, [j](double t) { return block_weight(j, t); });
}
SpectralField horizontal_lowpass(const SpectralField& f, int j) {
  return apply_horizontal(f, [j](double t) { return lowpass_weight(j, t); });
}

SpectralField axis_mean(const SpectralField& f, Axis axis) {
  auto zero = [](double t) { return t == 0.0 ? 1.0 : 0.0; };
  return axis == Axis::vertical ? apply_vertical(f, zero) : apply_horizontal(f, zero);
}

SpectralField DyadicDecomposition::sum() const {
  SpectralField s = mean;
  for (const auto& b : blocks) s += b;
  return s;
}

DyadicDecomposition decompose(const SpectralField& f, Axis axis) {
  DyadicDecomposition d;
  d.axis = axis;
  d.range = index_range(f.grid(), axis);
  d.mean = axis_mean(f, axis);
  for (int q = d.range.lo; q <= d.range.hi; ++q)
    d.blocks.push_back(axis == Axis::vertical ? vertical_block(f, q) : horizontal_block(f, q));
  return d;
}

std::vector<BlockLabel> block_labels(const Grid& g, const BesovSpec& spec) {
  std::vector<int> qs{kMean}, js{kNone};
  const IndexRange rq = index_range(g, Axis::vertical);
  for (int q = rq.lo; q <= rq.hi; ++q) qs.push_back(q);
  if (spec.kind == BesovKind::anisotropic) {
    js = {kMean};
    const IndexRange rj = index_range(g, Axis::horizontal);
    for (int j = rj.lo; j <= rj.hi; ++j) js.push_back(j);
  }
  std::vector<BlockLabel> out;
  for (int q : qs)
    for (int j : js) out.push_back({j, q});
  return out;
}

double block_weight_factor(const BlockLabel& b, const BesovSpec& spec) {
  double w = 1.0;
  if (b.j != kNone && b.j != kMean) w *= std::exp2(b.j * spec.s);
  if (b.q != kNone && b.q != kMean) w *= std::exp2(b.q * spec.s_prime);
  return w;
}

std::vector<double> weighted_block_norms(const SpectralField* const* comps, std::size_t n_comps,
                                         const BesovSpec& spec) {
  if (n_comps == 0) throw std::invalid_argument("no components");
  const Grid& g = comps[0]->grid();
  for (std::size_t c = 1; c < n_comps; ++c)
    if (!(comps[c]->grid() == g)) throw std::invalid_argument("components on different grids");
  const auto labels = block_labels(g, spec);
  const auto& kt = kernels::active();
  std::vector<double> out;
  out.reserve(labels.size());
  std::vector<double> wq2(g.n_v());
  for (const BlockLabel& b : labels) {
    for (int i3 = 0; i3 < g.n_v(); ++i3) {
      const double w = label_weight(b.q, vertical_freq(g, i3));
      wq2[i3] = w * w;
    }
    double acc = 0.0;
    for (int i1 = 0; i1 < g.n_h(); ++i1)
      for (int i2 = 0; i2 < g.n_h(); ++i2) {
        const double wj = label_weight(b.j, horizontal_freq(g, i1, i2));
        if (wj == 0.0) continue;
        const std::size_t off = g.index(i1, i2, 0);
        double line = 0.0;
        for (std::size_t c = 0; c < n_comps; ++c)
          line += kt.weighted_norm2(comps[c]->data() + off, wq2.data(), g.n_v());
        acc += wj * wj * line;
      }
    out.push_back(block_weight_factor(b, spec) * std::sqrt(g.volume() * acc));
  }
  return out;
}

std::vector<double> weighted_block_norms(const SpectralField& f, const BesovSpec& spec) {
  const SpectralField* p[1] = {&f};
  return weighted_block_norms(p, 1, spec);
}

std::vector<double> weighted_block_norms(const VectorField& v, const BesovSpec& spec) {
  const SpectralField* p[3] = {&v[0], &v[1], &v[2]};
  return weighted_block_norms(p, 3, spec);
}

double besov_norm(const SpectralField& f, const BesovSpec& spec) {
  double s = 0.0;
  for (double x : weighted_block_norms(f, spec)) s += x;
  return s;
}

double besov_norm(const VectorField& v, const BesovSpec& spec) {
  double s = 0.0;
  for (double x : weighted_block_norms(v, spec)) s += x;
  return s;
}

double isotropic_besov_norm(const SpectralField& f, double s, double r) {
  const Grid& g = f.grid();
  auto freq = [&](int i1, int i2, int i3) {
    return std::sqrt(g.xi_h(i1) * g.xi_h(i1) + g.xi_h(i2) * g.xi_h(i2) + g.xi_v(i3) * g.xi_v(i3));
  };
  std::set<double> freqs;
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2)
      for (int i3 = 0; i3 < g.n_v(); ++i3) freqs.insert(freq(i1, i2, i3));
  const IndexRange range = range_of(freqs);
  std::vector<double> blocks;
  blocks.push_back(std::sqrt(g.volume()) * std::abs(f.at(0, 0, 0)));
  for (int q = range.lo; q <= range.hi; ++q) {
    double acc = 0.0;
    for (int i1 = 0; i1 < g.n_h(); ++i1)
      for (int i2 = 0; i2 < g.n_h(); ++i2)
        for (int i3 = 0; i3 < g.n_v(); ++i3) {
          const double w = block_weight(q, freq(i1, i2, i3));
          acc += w * w * std::norm(f.at(i1, i2, i3));
        }
    blocks.push_back(std::exp2(q * s) * std::sqrt(g.volume() * acc));
  }
  if (std::isinf(r)) return *std::max_element(blocks.begin(), blocks.end());
  double acc = 0.0;
  for (double b : blocks) acc += std::pow(b, r);
  return std::pow(acc, 1.0 / r);
}

void NormTimeSeries::append(double t, std::vector<double> block_values) {
  if (!times.empty() && !(t > times.back()))
    throw std::invalid_argument("snapshot times must be strictly increasing");
  if (block_values.size() != blocks.size())
    throw std::invalid_argument("block count does not match the series");
  times.push_back(t);
  values.push_back(std::move(block_values));
}

void NormTimeSeries::append(double t, const SpectralField& f) {
  append(t, weighted_block_norms(f, spec));
}

void NormTimeSeries::append(double t, const VectorField& v) {
  append(t, weighted_block_norms(v, spec));
}

NormTimeSeries make_series(const Grid& g, const BesovSpec& spec) {
  NormTimeSeries s;
  s.spec = spec;
  s.blocks = block_labels(g, spec);
  return s;
}

double chemin_lerner_norm(const NormTimeSeries& series, double r) {
  if (series.size() == 0) throw std::invalid_argument("empty norm series");
  return chemin_lerner_norm(series, r, 0, series.size() - 1);
}

double chemin_lerner_norm(const NormTimeSeries& series, double r, std::size_t first,
                          std::size_t last) {
  if (series.size() == 0) throw std::invalid_argument("empty norm series");
  if (last >= series.size() || first > last) throw std::out_of_range("bad snapshot range");
  if (!std::isinf(r) && first == last)
    throw std::invalid_argument("time quadrature needs at least two snapshots");
  if (!(r == 1.0 || r == 2.0 || std::isinf(r)))
    throw std::invalid_argument("Chemin-Lerner exponent must be 1, 2 or inf");
  double sum = 0.0;
  for (std::size_t b = 0; b < series.blocks.size(); ++b) sum += time_norm(series, b, r, first, last);
  return sum;
}

BonyParts bony_vertical_decompose(const SpectralField& a, const SpectralField& b) {
  const Grid& g = a.grid();
  if (!(b.grid() == g)) throw std::invalid_argument("fields live on different grids");
  const DyadicDecomposition da = decompose(a, Axis::vertical);
  const DyadicDecomposition db = decompose(b, Axis::vertical);
  const int nq = da.range.count();
  const std::size_t n = g.size();

  auto phys = [](const SpectralField& f) { return inverse_transform(f); };
  std::vector<RealVec> pa, pb;
  for (int k = 0; k < nq; ++k) {
    pa.push_back(phys(da.blocks[k]));
    pb.push_back(phys(db.blocks[k]));
  }
  const RealVec ma = phys(da.mean), mb = phys(db.mean);

  RealVec t1(n, 0.0), t2(n, 0.0), r(n, 0.0);
  RealVec low_a = ma, low_b = mb;  // S_{q-1}, advanced as q increases
  for (std::size_t i = 0; i < n; ++i) r[i] = ma[i] * mb[i];
  for (int k = 0; k < nq; ++k) {
    // low_* holds mean + blocks up to index k-2 here.
    for (std::size_t i = 0; i < n; ++i) {
      t1[i] += low_a[i] * pb[k][i];
      t2[i] += low_b[i] * pa[k][i];
      double near = pb[k][i];
      if (k > 0) near += pb[k - 1][i];
      if (k + 1 < nq) near += pb[k + 1][i];
      r[i] += pa[k][i] * near;
    }
    if (k >= 1) {
      for (std::size_t i = 0; i < n; ++i) {
        low_a[i] += pa[k - 1][i];
        low_b[i] += pb[k - 1][i];
      }
    }
  }
  return {forward_transform(t1, g), forward_transform(t2, g), forward_transform(r, g)};
}

std::vector<double> geometric_times(double t_min, double t_max, std::size_t n) {
  if (!(t_min > 0.0) || !(t_max > t_min) || n < 2)
    throw std::invalid_argument("geometric grid needs 0 < t_min < t_max and n >= 2");
  std::vector<double> t(n);
  const double ratio = std::log(t_max / t_min) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) t[k] = t_min * std::exp(ratio * static_cast<double>(k));
  return t;
}

double heat_flow_norm(const SpectralField& f, double s, double p, double r,
                      const std::vector<double>& t_samples) {
  if (s >= 0.0) throw std::invalid_argument("heat-flow norm needs s < 0");
  if (t_samples.empty()) throw std::invalid_argument("no time samples");
  std::vector<double> v;
  v.reserve(t_samples.size());
  for (double t : t_samples) v.push_back(std::pow(t, -s / 2.0) * lp_norm(heat_3d(f, t), p));
  if (std::isinf(r)) return *std::max_element(v.begin(), v.end());
  if (t_samples.size() < 2) throw std::invalid_argument("L^r(dt/t) quadrature needs two samples");
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const double dlog = std::log(t_samples[k + 1] / t_samples[k]);
    acc += 0.5 * dlog * (std::pow(v[k], r) + std::pow(v[k + 1], r));
  }
  return std::pow(acc, 1.0 / r);
}

}  // namespace anivisc::lp
