#pragma once

#include <cstdint>

#include "anivisc/spectral_field.hpp"

namespace anivisc {

/// Spectral band on |xi_h| and |xi3| (inclusive bounds, physical wavenumbers).
struct Band {
  double h_min = 0.0;
  double h_max = 4.0;
  double v_min = 0.0;
  double v_max = 4.0;
};

/// Real Gaussian field with independent N(0,1) + iN(0,1) coefficients on the
/// band (Hermitian pairs, real zero mode). Coefficients are drawn in a fixed
/// order over integer wavenumbers, so the same seed gives the same field on
/// every grid that resolves the band. Throws std::invalid_argument if the
/// band reaches the grid's Nyquist index.
SpectralField gaussian_field(const Grid& grid, const Band& band, std::uint64_t seed);

}  // namespace anivisc
