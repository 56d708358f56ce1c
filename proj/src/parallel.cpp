#include "anivisc/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>

namespace anivisc {
namespace {

int env_cap() {
  if (const char* s = std::getenv("ANIVISC_THREADS")) {
    const int v = std::atoi(s);
    if (v > 0) return v;
  }
  return 0;
}

std::atomic<int>& cap_slot() {
  static std::atomic<int> cap{env_cap()};
  return cap;
}

}  // namespace

int thread_count() {
  const int avail = std::max(1, omp_get_max_threads());
  const int cap = cap_slot().load(std::memory_order_relaxed);
  return cap > 0 ? std::min(avail, cap) : avail;
}

void set_thread_cap(int cap) { cap_slot().store(std::max(0, cap), std::memory_order_relaxed); }

}  // namespace anivisc
