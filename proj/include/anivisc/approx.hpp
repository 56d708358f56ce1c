#pragma once

#include <array>
#include <vector>

#include "anivisc/spectral_field.hpp"

// Building blocks of u_app = [u^h + eps w^h, w3]_eps. Profiles (u^h, w, the
// pressures) live on a unit-period grid and do not depend on eps; only the
// final embedding does. All products are dealiased pseudo-spectral products.

namespace anivisc {

/// w^h = -grad_h Delta_h^{-1} d3 w3. Throws std::domain_error when d3 w3
/// has horizontal mean (w3 has xi_h = 0, xi3 != 0 content above 1e-12).
std::array<SpectralField, 2> reconstruct_wh(const SpectralField& w3);

/// w = (w^h, w3).
VectorField transport_field(const SpectralField& w3);

/// p0 = sum_{i,j<=2} d_i d_j (-Delta_h)^{-1}(u^i u^j).
SpectralField compute_p0(const SpectralField& u1, const SpectralField& u2);

struct P1Parts {
  SpectralField p1h;  // sum_{i,j<=2} d_i d_j (-Delta_h)^{-1}(u^i w^j)
  SpectralField p13;  // sum_{i<=2} d_i d_3 (-Delta_h)^{-1}(u^i w^3)
};
P1Parts compute_p1(const SpectralField& u1, const SpectralField& u2, const VectorField& w);

struct PressureFields {
  SpectralField p0;
  SpectralField p1h;
  SpectralField p13;
};

/// (a . grad) b for a 2- or 3-component a (a[2] ignored when horizontal_only).
SpectralField advect(const VectorField& a, const SpectralField& b, bool horizontal_only = false);

/// u_app at one time on the grid stretched by 2^m.
VectorField assemble_uapp(const SpectralField& u1, const SpectralField& u2, const VectorField& w,
                          int m);

/// Trajectory form: uh[k] = (u1, u2) and w[k] at the same snapshot times.
std::vector<VectorField> assemble_uapp(const std::vector<std::array<SpectralField, 2>>& uh,
                                       const std::vector<VectorField>& w, int m);

/// F^eps = eps[(w^h.grad_h + w3 d3)(w^h, 0)]_eps + [w.grad(u^h, w3)]_eps
///         + (0, [d3(p0 + eps p1)]_eps), on the stretched grid.
VectorField compute_forcing_F(const SpectralField& u1, const SpectralField& u2, const VectorField& w,
                              const PressureFields& p, int m);

/// Residual of the horizontal part of the transport system for the
/// reconstructed w^h, in closed form on the unit grid:
///   M = u^h.grad_h w^h + grad_h p1 + grad_h Delta_h^{-1} d3 (u^h.grad_h w3),
/// returned as (M1, M2, 0).
VectorField wh_momentum_residual(const SpectralField& u1, const SpectralField& u2,
                                 const VectorField& w, const PressureFields& p);

/// Everything derived from (u^h, w3) at one time.
struct ApproxProfiles {
  SpectralField u1, u2;
  VectorField w;
  PressureFields p;
};
ApproxProfiles make_profiles(const SpectralField& u1, const SpectralField& u2,
                             const SpectralField& w3);

}  // namespace anivisc
