#pragma once

#include <cstddef>
#include <string_view>

#include "anivisc/aligned.hpp"

// Data-parallel inner loops of the solvers. Every kernel has a scalar
// reference implementation and, on x86-64, an AVX2 variant. Elementwise
// kernels round identically in both variants (no FMA contraction);
// reductions differ only in summation order.

namespace anivisc::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  // x *= a
  void (*scale)(Complex* x, double a, std::size_t n);
  // y += a * x
  void (*axpy)(Complex* y, double a, const Complex* x, std::size_t n);
  // out = a * x + b * y
  void (*axpby)(Complex* out, double a, const Complex* x, double b, const Complex* y,
                std::size_t n);
  // out = (Re a * Re b, 0)
  void (*mul_real)(Complex* out, const Complex* a, const Complex* b, std::size_t n);
  // sum |x|^2
  double (*norm2)(const Complex* x, std::size_t n);
  // sum w * |x|^2
  double (*weighted_norm2)(const Complex* x, const double* w, std::size_t n);
  // max |Re x|
  double (*max_abs_real)(const Complex* x, std::size_t n);
  // out = i * k * x with k per element
  void (*mul_ik)(Complex* out, const Complex* x, const double* k, std::size_t n);
  // out = -i (k1 p1 + k2 p2 + k3[i] p3), the spectral divergence of a flux
  // line with constant horizontal wavenumbers. p3 may be null (2D flux).
  void (*neg_i_div)(Complex* out, const Complex* p1, const Complex* p2, const Complex* p3,
                    double k1, double k2, const double* k3, std::size_t n);
  // v <- v - k (k . v) / |k|^2 along a line with k = (k1, k2, k3[i]); the
  // zero wavevector is left untouched. v3 may be null for 2D projection.
  void (*leray_line)(Complex* v1, Complex* v2, Complex* v3, double k1, double k2,
                     const double* k3, std::size_t n);
};

const KernelTable& scalar_table();
/// Null when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();

bool isa_supported(Isa isa);

/// Table selected at first use: ANIVISC_SIMD=scalar|avx2 forces a variant,
/// otherwise the widest supported one.
const KernelTable& active();
void set_active(Isa isa);

std::string_view isa_name(Isa isa);

}  // namespace anivisc::kernels
