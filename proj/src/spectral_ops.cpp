#include "anivisc/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "anivisc/fft.hpp"
#include "anivisc/kernels.hpp"
#include "anivisc/parallel.hpp"

namespace anivisc {
namespace {

void require_same(const Grid& a, const Grid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

std::vector<double> vertical_dxi(const Grid& g) {
  std::vector<double> k(g.n_v());
  for (int i3 = 0; i3 < g.n_v(); ++i3) k[i3] = g.dxi_v(i3);
  return k;
}

struct Slot {
  int index;
  double weight;
};

// Where source index i of an axis of size n_src lands on an axis of size n_dst.
std::vector<std::vector<Slot>> axis_map(int n_src, int n_dst) {
  std::vector<std::vector<Slot>> map(n_src);
  for (int i = 0; i < n_src; ++i) {
    const int k = Grid::signed_index(i, n_src);
    if (n_dst >= n_src) {
      if (2 * i == n_src && n_dst > n_src) {
        map[i] = {{Grid::wrap_index(-n_src / 2, n_dst), 0.5}, {n_src / 2, 0.5}};
      } else {
        map[i] = {{Grid::wrap_index(k, n_dst), 1.0}};
      }
    } else if (std::abs(k) < n_dst / 2) {
      map[i] = {{Grid::wrap_index(k, n_dst), 1.0}};
    } else if (std::abs(k) == n_dst / 2) {
      map[i] = {{n_dst / 2, 1.0}};
    }
  }
  return map;
}

}  // namespace

double grid_x_h(const Grid& g, int i) { return i * g.spacing_h(); }
double grid_x_v(const Grid& g, int i3) { return i3 * g.spacing_v(); }

void to_physical(const SpectralField& f, ComplexVec& buf) {
  buf.assign(f.data(), f.data() + f.size());
  fft::transform3d(buf.data(), f.grid(), fft::Dir::backward);
}

SpectralField from_physical(ComplexVec& buf, const Grid& grid) {
  if (buf.size() != grid.size()) throw std::invalid_argument("buffer size does not match grid");
  for (auto& z : buf) z.imag(0.0);
  fft::transform3d(buf.data(), grid, fft::Dir::forward);
  SpectralField f(grid);
  std::copy(buf.begin(), buf.end(), f.data());
  kernels::active().scale(f.data(), 1.0 / static_cast<double>(grid.size()), f.size());
  return f;
}

SpectralField forward_transform(std::span<const double> samples, const Grid& grid) {
  if (samples.size() != grid.size())
    throw std::invalid_argument("sample count does not match grid dimensions");
  ComplexVec buf(grid.size());
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = Complex(samples[i], 0.0);
  return from_physical(buf, grid);
}

RealVec inverse_transform(const SpectralField& f) {
  ComplexVec buf;
  to_physical(f, buf);
  RealVec out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
  return out;
}

SpectralField sample(const Grid& g, const std::function<double(double, double, double)>& fn) {
  RealVec v(g.size());
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2)
      for (int i3 = 0; i3 < g.n_v(); ++i3)
        v[g.index(i1, i2, i3)] = fn(grid_x_h(g, i1), grid_x_h(g, i2), grid_x_v(g, i3));
  return forward_transform(v, g);
}

void enforce_hermitian(SpectralField& f) {
  const Grid& g = f.grid();
  const int nh = g.n_h(), nv = g.n_v();
  SpectralField out(g);
  for (int i1 = 0; i1 < nh; ++i1)
    for (int i2 = 0; i2 < nh; ++i2)
      for (int i3 = 0; i3 < nv; ++i3) {
        const Complex mirror = f.at((nh - i1) % nh, (nh - i2) % nh, (nv - i3) % nv);
        out.at(i1, i2, i3) = 0.5 * (f.at(i1, i2, i3) + std::conj(mirror));
      }
  f = std::move(out);
}

SpectralField derivative(const SpectralField& f, int axis) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("axis must be 1, 2 or 3");
  const Grid& g = f.grid();
  SpectralField out(g);
  const auto& kt = kernels::active();
  const int nv = g.n_v();
  std::vector<double> kv = vertical_dxi(g);
#pragma omp parallel num_threads(thread_count())
  {
    std::vector<double> k(nv);
#pragma omp for schedule(static)
    for (int i1 = 0; i1 < g.n_h(); ++i1)
      for (int i2 = 0; i2 < g.n_h(); ++i2) {
        const std::size_t off = g.index(i1, i2, 0);
        const double* kk = kv.data();
        if (axis != 3) {
          std::fill(k.begin(), k.end(), g.dxi_h(axis == 1 ? i1 : i2));
          kk = k.data();
        }
        kt.mul_ik(out.data() + off, f.data() + off, kk, nv);
      }
  }
  return out;
}

SpectralField horizontal_laplacian(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2) {
      const double kh2 = g.xi_h(i1) * g.xi_h(i1) + g.xi_h(i2) * g.xi_h(i2);
      const std::size_t off = g.index(i1, i2, 0);
      for (int i3 = 0; i3 < g.n_v(); ++i3) out.data()[off + i3] = -kh2 * f.data()[off + i3];
    }
  return out;
}

double horizontal_mean_fraction(const SpectralField& f) {
  const auto& kt = kernels::active();
  const double total = kt.norm2(f.data(), f.size());
  if (total == 0.0) return 0.0;
  const double mean = kt.norm2(f.data(), f.grid().n_v());
  return std::sqrt(mean / total);
}

SpectralField inverse_horizontal_laplacian(const SpectralField& f) {
  if (horizontal_mean_fraction(f) > 1e-12)
    throw std::domain_error("inverse horizontal Laplacian needs zero horizontal mean");
  const Grid& g = f.grid();
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2) {
      const double kh2 = g.xi_h(i1) * g.xi_h(i1) + g.xi_h(i2) * g.xi_h(i2);
      if (kh2 == 0.0) continue;
      const std::size_t off = g.index(i1, i2, 0);
      for (int i3 = 0; i3 < g.n_v(); ++i3) out.data()[off + i3] = -f.data()[off + i3] / kh2;
    }
  return out;
}

SpectralField heat_h(const SpectralField& f, double t) {
  const Grid& g = f.grid();
  SpectralField out(g);
  const auto& kt = kernels::active();
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2) {
      const double kh2 = g.xi_h(i1) * g.xi_h(i1) + g.xi_h(i2) * g.xi_h(i2);
      const std::size_t off = g.index(i1, i2, 0);
      std::copy(f.data() + off, f.data() + off + g.n_v(), out.data() + off);
      kt.scale(out.data() + off, std::exp(-kh2 * t), g.n_v());
    }
  return out;
}

SpectralField heat_3d(const SpectralField& f, double t) {
  const Grid& g = f.grid();
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2) {
      const double kh2 = g.xi_h(i1) * g.xi_h(i1) + g.xi_h(i2) * g.xi_h(i2);
      for (int i3 = 0; i3 < g.n_v(); ++i3) {
        const double k2 = kh2 + g.xi_v(i3) * g.xi_v(i3);
        out.at(i1, i2, i3) = std::exp(-k2 * t) * f.at(i1, i2, i3);
      }
    }
  return out;
}

SpectralField divergence(const VectorField& v) {
  const Grid& g = v[0].grid();
  require_same(g, v[1].grid());
  require_same(g, v[2].grid());
  SpectralField out(g);
  const auto& kt = kernels::active();
  const std::vector<double> kv = vertical_dxi(g);
  const int nv = g.n_v();
  // i(k.v) = -(-i)(k.v); neg_i_div gives -i(k.v), negated below.
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2) {
      const std::size_t off = g.index(i1, i2, 0);
      kt.neg_i_div(out.data() + off, v[0].data() + off, v[1].data() + off, v[2].data() + off,
                   g.dxi_h(i1), g.dxi_h(i2), kv.data(), nv);
      kt.scale(out.data() + off, -1.0, nv);
    }
  return out;
}

SpectralField divergence_h(const SpectralField& v1, const SpectralField& v2) {
  const Grid& g = v1.grid();
  require_same(g, v2.grid());
  SpectralField out(g);
  const auto& kt = kernels::active();
  const int nv = g.n_v();
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2) {
      const std::size_t off = g.index(i1, i2, 0);
      kt.neg_i_div(out.data() + off, v1.data() + off, v2.data() + off, nullptr, g.dxi_h(i1),
                   g.dxi_h(i2), nullptr, nv);
      kt.scale(out.data() + off, -1.0, nv);
    }
  return out;
}

void leray_project_inplace(VectorField& v) {
  const Grid& g = v[0].grid();
  require_same(g, v[1].grid());
  require_same(g, v[2].grid());
  const auto& kt = kernels::active();
  const std::vector<double> kv = vertical_dxi(g);
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2) {
      const std::size_t off = g.index(i1, i2, 0);
      kt.leray_line(v[0].data() + off, v[1].data() + off, v[2].data() + off, g.dxi_h(i1),
                    g.dxi_h(i2), kv.data(), g.n_v());
    }
}

VelocityState leray_project(const VectorField& v, double t) {
  VelocityState s{v, t};
  leray_project_inplace(s.u);
  return s;
}

void leray_project_h_inplace(SpectralField& v1, SpectralField& v2) {
  const Grid& g = v1.grid();
  require_same(g, v2.grid());
  const auto& kt = kernels::active();
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2) {
      const std::size_t off = g.index(i1, i2, 0);
      kt.leray_line(v1.data() + off, v2.data() + off, nullptr, g.dxi_h(i1), g.dxi_h(i2), nullptr,
                    g.n_v());
    }
}

void dealias_inplace(SpectralField& f) {
  const Grid& g = f.grid();
  const int ch = g.dealias_h(), cv = g.dealias_v();
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2) {
      const bool cut_h = std::abs(g.k_h(i1)) > ch || std::abs(g.k_h(i2)) > ch;
      for (int i3 = 0; i3 < g.n_v(); ++i3)
        if (cut_h || std::abs(g.k_v(i3)) > cv) f.at(i1, i2, i3) = 0.0;
    }
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  dealias_inplace(out);
  return out;
}

bool is_dealiased(const SpectralField& f) {
  SpectralField d = dealias(f);
  return std::equal(d.coeffs().begin(), d.coeffs().end(), f.coeffs().begin());
}

SpectralField product(const SpectralField& a, const SpectralField& b, bool dealiased) {
  require_same(a.grid(), b.grid());
  ComplexVec pa, pb;
  to_physical(a, pa);
  to_physical(b, pb);
  kernels::active().mul_real(pa.data(), pa.data(), pb.data(), pa.size());
  SpectralField out = from_physical(pa, a.grid());
  if (dealiased) dealias_inplace(out);
  return out;
}

SpectralField resample(const SpectralField& f, int n_h, int n_v) {
  const Grid& src = f.grid();
  const Grid dst = src.resized(n_h, n_v);
  if (dst == src) return f;
  const auto mh = axis_map(src.n_h(), n_h);
  const auto mv = axis_map(src.n_v(), n_v);
  SpectralField out(dst);
  for (int i1 = 0; i1 < src.n_h(); ++i1)
    for (const Slot& s1 : mh[i1])
      for (int i2 = 0; i2 < src.n_h(); ++i2)
        for (const Slot& s2 : mh[i2])
          for (int i3 = 0; i3 < src.n_v(); ++i3)
            for (const Slot& s3 : mv[i3])
              out.at(s1.index, s2.index, s3.index) +=
                  (s1.weight * s2.weight * s3.weight) * f.at(i1, i2, i3);
  return out;
}

SpectralField slowly_varying_embed(const SpectralField& f, int m) {
  if (m < 0) throw std::invalid_argument("stretch exponent must be a nonnegative integer");
  SpectralField out = f;
  out.relabel(f.grid().with_m(f.grid().m() + m));
  return out;
}

SpectralField pull_back(const SpectralField& f) {
  SpectralField out = f;
  out.relabel(f.grid().with_m(0));
  return out;
}

double l2_norm_sq(const SpectralField& f) {
  return f.grid().volume() * kernels::active().norm2(f.data(), f.size());
}

double l2_norm(const SpectralField& f) { return std::sqrt(l2_norm_sq(f)); }

double l2_norm(const VectorField& v) {
  return std::sqrt(l2_norm_sq(v[0]) + l2_norm_sq(v[1]) + l2_norm_sq(v[2]));
}

double max_abs(const SpectralField& f, int oversample) {
  const Grid& g = f.grid();
  const SpectralField fine = resample(f, g.n_h() * oversample, g.n_v() * oversample);
  ComplexVec buf;
  to_physical(fine, buf);
  return kernels::active().max_abs_real(buf.data(), buf.size());
}

double lp_norm(const SpectralField& f, double p, int oversample) {
  if (std::isinf(p)) return max_abs(f, oversample);
  if (p < 1.0) throw std::invalid_argument("lp_norm needs p >= 1");
  const Grid& g = f.grid();
  const SpectralField fine = resample(f, g.n_h() * oversample, g.n_v() * oversample);
  const RealVec v = inverse_transform(fine);
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s * fine.grid().volume() / static_cast<double>(v.size()), 1.0 / p);
}

double linf_h_l2_v(const SpectralField& f, int oversample) {
  const Grid& g = f.grid();
  const SpectralField fine = resample(f, g.n_h() * oversample, g.n_v());
  const Grid& fg = fine.grid();
  ComplexVec buf(fine.data(), fine.data() + fine.size());
  fft::transform_h(buf.data(), fg, fft::Dir::backward);
  const auto& kt = kernels::active();
  double mx = 0.0;
  for (std::size_t line = 0; line < fg.lines(); ++line)
    mx = std::max(mx, kt.norm2(buf.data() + line * fg.n_v(), fg.n_v()));
  return std::sqrt(fg.len_v() * mx);
}

}  // namespace anivisc
