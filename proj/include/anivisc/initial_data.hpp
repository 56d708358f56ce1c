#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anivisc/spectral_field.hpp"

namespace anivisc {

/// One Fourier coefficient; its Hermitian partner is added automatically.
struct ModeCoeff {
  int k1 = 0, k2 = 0, k3 = 0;
  double re = 0.0, im = 0.0;
};

/// Profiles of the initial data on the unit-period grid.
///   u0h:  "layered"  stream function sin x1 sin x2 cos x3
///         "tg-flat"  x3-independent Taylor-Green cell
///         "random"   Gaussian stream function, 1 <= |xi_h| <= 3, |xi3| <= 2
///         "modes"    stream function from u0h_modes
///         "zero"
///   w0_3: "default"  cos x1 sin x3, "random", "modes", "zero"
/// u0h is scaled by `amplitude` (for "random": to max |u0h| = amplitude),
/// w0_3 by `w_amplitude`.
struct InitialDataSpec {
  std::string u0h = "layered";
  std::string w0_3 = "default";
  double amplitude = 1.0;
  double w_amplitude = 0.25;
  std::uint64_t seed = 1;
  std::vector<ModeCoeff> u0h_modes;
  std::vector<ModeCoeff> w0_3_modes;
};

struct Profiles {
  SpectralField u1, u2, w3;
};

/// Fraction of L^2 mass outside the central third of the spectrum, per
/// component maximum. Used as the resolution self-check.
double spectral_tail(const SpectralField& f);

/// Builds (u0h, w0_3) on `unit` (which must have m = 0). Throws
/// std::invalid_argument for unknown profile names, modes the grid cannot
/// represent, or profiles whose spectral tail exceeds tail_limit, and
/// std::domain_error when w0_3 has xi_h = 0, xi3 != 0 content.
Profiles build_profiles(const InitialDataSpec& spec, const Grid& unit, double tail_limit = 1e-8);

/// u0 = [u0h + eps w0h, w0_3]_eps on the grid stretched by 2^m.
VectorField build_initial_data(const Profiles& p, int m);

struct ProfileNorms {
  double b0_half = 0.0;       // ||(u0h, w0_3)|| in the anisotropic B^{0,1/2}
  double bm1_five_half = 0.0;  // ... and in B^{-1,5/2}
};
ProfileNorms profile_norms(const Profiles& p);

/// Size proxy sup_t t^{1/2} ||e^{t Delta} u0||_{L^inf}, maximized over
/// components; t sampled geometrically on [1e-3, 1e2].
double largeness_proxy(const VectorField& u0, std::size_t n_times = 48);

}  // namespace anivisc
