#include "anivisc/grid.hpp"

#include <stdexcept>
#include <string>

namespace anivisc {
namespace {

bool pow2_at_least_4(int n) { return n >= 4 && (n & (n - 1)) == 0; }

}  // namespace

Grid Grid::make(int n_h, int n_v, int m) {
  if (!pow2_at_least_4(n_h) || !pow2_at_least_4(n_v))
    throw std::invalid_argument("grid sizes must be powers of two >= 4, got n_h=" +
                                std::to_string(n_h) + " n_v=" + std::to_string(n_v));
  if (m < 0 || m > 30) throw std::invalid_argument("stretch exponent m out of range");
  return Grid(n_h, n_v, m);
}

}  // namespace anivisc
