#pragma once

#include <vector>

#include "anivisc/nsh_solver.hpp"
#include "anivisc/spectral_field.hpp"

namespace anivisc {

/// Horizontal velocity u^h(., y3) on every vertical collocation point y3.
/// Storage is hybrid: for index (i1, i2, i3), i1 and i2 address horizontal
/// Fourier modes (normalized per slice) and i3 is the physical slice.
struct SliceEnsemble {
  SpectralField u1;
  SpectralField u2;
  double t = 0.0;

  const Grid& grid() const { return u1.grid(); }
};

/// Full 3D spectrum <-> hybrid slice layout.
SpectralField hybrid_from_spectral(const SpectralField& f);
SpectralField spectral_from_hybrid(const SpectralField& h);

SliceEnsemble slices_from_spectral(const SpectralField& u1, const SpectralField& u2, double t = 0.0);
/// Spectral (u1, u2) of an ensemble.
std::array<SpectralField, 2> slices_to_spectral(const SliceEnsemble& s);

/// Largest 2D divergence defect over slices (relative, as divergence_defect).
double slice_divergence_defect(const SliceEnsemble& s);

/// Per-slice ||u^h(., y3)||^2_{L^2(T^2)}.
std::vector<double> slice_energies(const SliceEnsemble& s);

struct SliceTrajectory {
  std::vector<SliceEnsemble> snapshots;  // at the StepperConfig snapshot steps
  std::vector<double> dissipation;       // per slice: integral of ||grad_h u^h||^2 over [0, t_end]
  StepperConfig cfg;
};

/// Solves 2D Navier-Stokes independently on every slice. Throws
/// std::invalid_argument for slices that are not divergence-free.
SliceTrajectory solve_ns2d_slices(const SliceEnsemble& initial, const StepperConfig& cfg);

/// Solves d_t w3 + u^h . grad_h w3 - Delta_h w3 = 0 along a slice trajectory
/// produced with the same cfg; u^h is re-integrated from each stored snapshot
/// so the transport sees the exact stage values. w3_0 is spectral. Throws
/// std::invalid_argument when the trajectory does not match cfg.
std::vector<SpectralField> solve_transport_w3(const SliceTrajectory& uh, const SpectralField& w3_0,
                                              const StepperConfig& cfg);

/// l2 fraction of coefficients with xi_h = 0 and xi3 != 0.
double vertical_shear_fraction(const SpectralField& f);

}  // namespace anivisc
