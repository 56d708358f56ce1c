#include "anivisc/spectral_field.hpp"

#include <stdexcept>

#include "anivisc/kernels.hpp"

namespace anivisc {
namespace {

int fft_slot(int k, int n) {
  if (k < -n / 2 || k >= n / 2) throw std::out_of_range("wavenumber not representable on grid");
  return Grid::wrap_index(k, n);
}

void require_same(const Grid& a, const Grid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

}  // namespace

Complex& SpectralField::mode(int k1, int k2, int k3) {
  return at(fft_slot(k1, grid_.n_h()), fft_slot(k2, grid_.n_h()), fft_slot(k3, grid_.n_v()));
}

Complex SpectralField::mode(int k1, int k2, int k3) const {
  return at(fft_slot(k1, grid_.n_h()), fft_slot(k2, grid_.n_h()), fft_slot(k3, grid_.n_v()));
}

void SpectralField::relabel(const Grid& grid) {
  if (grid.n_h() != grid_.n_h() || grid.n_v() != grid_.n_v())
    throw std::invalid_argument("relabel requires identical grid shape");
  grid_ = grid;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same(grid_, o.grid_);
  kernels::active().axpy(data(), 1.0, o.data(), size());
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same(grid_, o.grid_);
  kernels::active().axpy(data(), -1.0, o.data(), size());
  return *this;
}

SpectralField& SpectralField::operator*=(double a) {
  kernels::active().scale(data(), a, size());
  return *this;
}

VectorField zeros(const Grid& grid) {
  return {SpectralField(grid), SpectralField(grid), SpectralField(grid)};
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

VectorField operator*(double s, const VectorField& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

}  // namespace anivisc
