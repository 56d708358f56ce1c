#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

namespace anivisc {

/// Periodic box T^2 x T_v. Horizontal period is 2*pi on both axes; the
/// vertical period is 2*pi*2^m, so vertical wavenumbers are integers times
/// 2^-m. Storage order is (i1, i2, i3) with i3 fastest.
class Grid {
 public:
  Grid() = default;

  /// Throws std::invalid_argument unless n_h, n_v are powers of two >= 4 and m >= 0.
  static Grid make(int n_h, int n_v, int m = 0);

  int n_h() const { return n_h_; }
  int n_v() const { return n_v_; }
  int m() const { return m_; }

  double len_h() const { return 2.0 * std::numbers::pi; }
  double len_v() const { return 2.0 * std::numbers::pi * std::ldexp(1.0, m_); }
  /// Vertical wavenumber unit 2*pi/len_v = 2^-m.
  double eps() const { return std::ldexp(1.0, -m_); }
  double volume() const { return len_h() * len_h() * len_v(); }
  double spacing_h() const { return len_h() / n_h_; }
  double spacing_v() const { return len_v() / n_v_; }

  std::size_t size() const {
    return static_cast<std::size_t>(n_h_) * n_h_ * n_v_;
  }
  std::size_t lines() const { return static_cast<std::size_t>(n_h_) * n_h_; }
  std::size_t index(int i1, int i2, int i3) const {
    return (static_cast<std::size_t>(i1) * n_h_ + i2) * n_v_ + i3;
  }

  /// FFT index -> signed integer wavenumber; the Nyquist index maps to -n/2.
  static int signed_index(int i, int n) { return i < n / 2 ? i : i - n; }
  /// Signed wavenumber -> FFT index (caller guarantees |k| <= n/2).
  static int wrap_index(int k, int n) { return k >= 0 ? k : k + n; }

  int k_h(int i) const { return signed_index(i, n_h_); }
  int k_v(int i3) const { return signed_index(i3, n_v_); }
  double xi_h(int i) const { return k_h(i); }
  double xi_v(int i3) const { return k_v(i3) * eps(); }

  /// Wavenumbers used by odd-order derivatives: the Nyquist mode has no real
  /// derivative, so it is mapped to zero.
  double dxi_h(int i) const { return 2 * i == n_h_ ? 0.0 : xi_h(i); }
  double dxi_v(int i3) const { return 2 * i3 == n_v_ ? 0.0 : xi_v(i3); }

  /// 2/3-rule cutoffs on signed index magnitude.
  int dealias_h() const { return n_h_ / 3; }
  int dealias_v() const { return n_v_ / 3; }

  Grid with_m(int m) const { return make(n_h_, n_v_, m); }
  Grid resized(int n_h, int n_v) const { return make(n_h, n_v, m_); }

  bool operator==(const Grid&) const = default;

 private:
  Grid(int n_h, int n_v, int m) : n_h_(n_h), n_v_(n_v), m_(m) {}
  int n_h_ = 0;
  int n_v_ = 0;
  int m_ = 0;
};

}  // namespace anivisc
