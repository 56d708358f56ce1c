#pragma once

#include <array>
#include <span>

#include "anivisc/aligned.hpp"
#include "anivisc/grid.hpp"

namespace anivisc {

/// Fourier coefficients of a real scalar field on a Grid. The zero mode is
/// the mean of the field (forward transform divides by the point count).
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid& grid) : grid_(grid), c_(grid.size()) {}

  const Grid& grid() const { return grid_; }
  std::span<Complex> coeffs() { return c_; }
  std::span<const Complex> coeffs() const { return c_; }
  Complex* data() { return c_.data(); }
  const Complex* data() const { return c_.data(); }
  std::size_t size() const { return c_.size(); }

  Complex& at(int i1, int i2, int i3) { return c_[grid_.index(i1, i2, i3)]; }
  Complex at(int i1, int i2, int i3) const { return c_[grid_.index(i1, i2, i3)]; }

  /// Coefficient addressed by signed integer wavenumbers (k3 in units of
  /// the grid's vertical wavenumber 2^-m). Throws if not representable.
  Complex& mode(int k1, int k2, int k3);
  Complex mode(int k1, int k2, int k3) const;

  /// Swaps in a grid of identical shape but different vertical stretch.
  void relabel(const Grid& grid);

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double a);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  Grid grid_;
  ComplexVec c_;
};

using VectorField = std::array<SpectralField, 3>;

/// Velocity field with its time stamp; divergence-free after projection.
struct VelocityState {
  VectorField u;
  double t = 0.0;
};

VectorField zeros(const Grid& grid);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);

}  // namespace anivisc
