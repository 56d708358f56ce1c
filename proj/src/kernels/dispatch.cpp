#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "anivisc/kernels.hpp"

namespace anivisc::kernels {
namespace {

const KernelTable* table_for(Isa isa) {
  return isa == Isa::avx2 ? avx2_table() : &scalar_table();
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("ANIVISC_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return &scalar_table();
    if (v == "avx2") {
      if (!isa_supported(Isa::avx2)) throw std::runtime_error("ANIVISC_SIMD=avx2 but AVX2 is unavailable");
      return avx2_table();
    }
    throw std::runtime_error("ANIVISC_SIMD must be 'scalar' or 'avx2', got '" + v + "'");
  }
  return isa_supported(Isa::avx2) ? avx2_table() : &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> s{initial_table()};
  return s;
}

}  // namespace

bool isa_supported(Isa isa) {
  if (isa == Isa::scalar) return true;
#if defined(__x86_64__) || defined(__i386__)
  return avx2_table() != nullptr && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable& active() { return *slot().load(std::memory_order_relaxed); }

void set_active(Isa isa) {
  if (!isa_supported(isa)) throw std::invalid_argument("instruction set not supported on this host");
  slot().store(table_for(isa), std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace anivisc::kernels
