#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "anivisc/spectral_ops.hpp"

namespace testing_util {

using namespace anivisc;

inline double max_diff(const RealVec& a, const RealVec& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_values(const RealVec& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

inline double coeff_max_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double coeff_max(const SpectralField& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i]));
  return m;
}

inline RealVec white_noise(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  RealVec v(g.size());
  for (double& x : v) x = nd(rng);
  return v;
}

inline SpectralField noise_field(const Grid& g, unsigned seed) {
  return forward_transform(white_noise(g, seed), g);
}

}  // namespace testing_util
