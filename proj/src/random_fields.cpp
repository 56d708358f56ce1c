#include "anivisc/random_fields.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace anivisc {

SpectralField gaussian_field(const Grid& g, const Band& band, std::uint64_t seed) {
  if (!(band.h_max >= band.h_min) || !(band.v_max >= band.v_min) || !std::isfinite(band.h_max) ||
      !std::isfinite(band.v_max))
    throw std::invalid_argument("band must be a finite, nonempty range");
  const int kh = static_cast<int>(std::floor(band.h_max));
  const int kv = static_cast<int>(std::floor(band.v_max / g.eps() + 1e-9));
  if (kh >= g.n_h() / 2 || kv >= g.n_v() / 2)
    throw std::invalid_argument("band is not resolved by the grid");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  SpectralField f(g);
  for (int k1 = -kh; k1 <= kh; ++k1)
    for (int k2 = -kh; k2 <= kh; ++k2)
      for (int k3 = -kv; k3 <= kv; ++k3) {
        // Only the first member of each +-k pair draws.
        const bool canonical = k1 > 0 || (k1 == 0 && (k2 > 0 || (k2 == 0 && k3 >= 0)));
        if (!canonical) continue;
        const double xh = std::hypot(static_cast<double>(k1), static_cast<double>(k2));
        const double xv = std::abs(k3 * g.eps());
        const double re = normal(rng);
        const double im = normal(rng);
        if (xh < band.h_min || xh > band.h_max || xv < band.v_min || xv > band.v_max) continue;
        if (k1 == 0 && k2 == 0 && k3 == 0) {
          f.mode(0, 0, 0) = re;
          continue;
        }
        f.mode(k1, k2, k3) = Complex(re, im);
        f.mode(-k1, -k2, -k3) = Complex(re, -im);
      }
  return f;
}

}  // namespace anivisc
