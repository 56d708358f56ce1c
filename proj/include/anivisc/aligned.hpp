#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <vector>

namespace anivisc {

using Complex = std::complex<double>;

/// Allocator returning 64-byte aligned storage so FFTW plans and AVX2 loads
/// see the same alignment for every buffer.
template <class T, std::size_t Align = 64>
struct AlignedAllocator {
  using value_type = T;

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U, Align>&) noexcept {}

  template <class U>
  struct rebind {
    using other = AlignedAllocator<U, Align>;
  };

  T* allocate(std::size_t n) {
    return static_cast<T*>(::operator new(n * sizeof(T), std::align_val_t(Align)));
  }
  void deallocate(T* p, std::size_t) noexcept {
    ::operator delete(p, std::align_val_t(Align));
  }

  template <class U>
  bool operator==(const AlignedAllocator<U, Align>&) const noexcept { return true; }
};

using ComplexVec = std::vector<Complex, AlignedAllocator<Complex>>;
using RealVec = std::vector<double, AlignedAllocator<double>>;

}  // namespace anivisc
