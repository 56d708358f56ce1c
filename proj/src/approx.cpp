#include "anivisc/approx.hpp"

#include <stdexcept>

#include "anivisc/slice_solver.hpp"
#include "anivisc/spectral_ops.hpp"

namespace anivisc {
namespace {

// (-Delta_h)^{-1} with the xi_h = 0 modes sent to zero; only used under
// horizontal derivatives, which vanish there anyway.
SpectralField neg_inv_lap_h(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n_h(); ++i1)
    for (int i2 = 0; i2 < g.n_h(); ++i2) {
      const double kh2 = g.xi_h(i1) * g.xi_h(i1) + g.xi_h(i2) * g.xi_h(i2);
      if (kh2 == 0.0) continue;
      for (int i3 = 0; i3 < g.n_v(); ++i3) out.at(i1, i2, i3) = f.at(i1, i2, i3) / kh2;
    }
  return out;
}

SpectralField d(const SpectralField& f, int axis) { return derivative(f, axis); }

}  // namespace

std::array<SpectralField, 2> reconstruct_wh(const SpectralField& w3) {
  if (vertical_shear_fraction(w3) > 1e-12)
    throw std::domain_error("d3 w3 must have zero horizontal mean");
  // -grad_h Delta_h^{-1} d3 w3 = grad_h (-Delta_h)^{-1} d3 w3
  const SpectralField phi = neg_inv_lap_h(d(w3, 3));
  return {d(phi, 1), d(phi, 2)};
}

VectorField transport_field(const SpectralField& w3) {
  auto wh = reconstruct_wh(w3);
  return {std::move(wh[0]), std::move(wh[1]), w3};
}

SpectralField compute_p0(const SpectralField& u1, const SpectralField& u2) {
  const SpectralField* u[2] = {&u1, &u2};
  SpectralField p(u1.grid());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      p += d(d(neg_inv_lap_h(product(*u[i], *u[j])), i + 1), j + 1);
  return p;
}

P1Parts compute_p1(const SpectralField& u1, const SpectralField& u2, const VectorField& w) {
  const SpectralField* u[2] = {&u1, &u2};
  P1Parts out{SpectralField(u1.grid()), SpectralField(u1.grid())};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j)
      out.p1h += d(d(neg_inv_lap_h(product(*u[i], w[j])), i + 1), j + 1);
    out.p13 += d(d(neg_inv_lap_h(product(*u[i], w[2])), i + 1), 3);
  }
  return out;
}

SpectralField advect(const VectorField& a, const SpectralField& b, bool horizontal_only) {
  SpectralField out = product(a[0], d(b, 1));
  out += product(a[1], d(b, 2));
  if (!horizontal_only) out += product(a[2], d(b, 3));
  return out;
}

VectorField assemble_uapp(const SpectralField& u1, const SpectralField& u2, const VectorField& w,
                          int m) {
  const double eps = std::ldexp(1.0, -m);
  return {slowly_varying_embed(u1 + eps * w[0], m), slowly_varying_embed(u2 + eps * w[1], m),
          slowly_varying_embed(w[2], m)};
}

std::vector<VectorField> assemble_uapp(const std::vector<std::array<SpectralField, 2>>& uh,
                                       const std::vector<VectorField>& w, int m) {
  if (uh.size() != w.size()) throw std::invalid_argument("u^h and w trajectories are misaligned");
  std::vector<VectorField> out;
  out.reserve(uh.size());
  for (std::size_t k = 0; k < uh.size(); ++k) out.push_back(assemble_uapp(uh[k][0], uh[k][1], w[k], m));
  return out;
}

VectorField compute_forcing_F(const SpectralField& u1, const SpectralField& u2, const VectorField& w,
                              const PressureFields& p, int m) {
  const double eps = std::ldexp(1.0, -m);
  const Grid& g = u1.grid();
  // eps (w^h.grad_h + w3 d3) w^h
  VectorField f = zeros(g);
  for (int c = 0; c < 2; ++c) f[c] = eps * advect(w, w[c]);
  // w.grad (u^h, w3)
  f[0] += advect(w, u1);
  f[1] += advect(w, u2);
  f[2] += advect(w, w[2]);
  // (0, d3(p0 + eps p1))
  f[2] += d(p.p0 + eps * (p.p1h + p.p13), 3);
  return {slowly_varying_embed(f[0], m), slowly_varying_embed(f[1], m),
          slowly_varying_embed(f[2], m)};
}

VectorField wh_momentum_residual(const SpectralField& u1, const SpectralField& u2,
                                 const VectorField& w, const PressureFields& p) {
  const VectorField uh{u1, u2, SpectralField(u1.grid())};
  const SpectralField p1 = p.p1h + p.p13;
  const SpectralField psi = neg_inv_lap_h(d(advect(uh, w[2], true), 3));
  VectorField out = zeros(u1.grid());
  for (int c = 0; c < 2; ++c) out[c] = advect(uh, w[c], true) + d(p1, c + 1) - d(psi, c + 1);
  return out;
}

ApproxProfiles make_profiles(const SpectralField& u1, const SpectralField& u2,
                             const SpectralField& w3) {
  ApproxProfiles a{u1, u2, transport_field(w3), {}};
  a.p.p0 = compute_p0(u1, u2);
  P1Parts p1 = compute_p1(u1, u2, a.w);
  a.p.p1h = std::move(p1.p1h);
  a.p.p13 = std::move(p1.p13);
  return a;
}

}  // namespace anivisc
