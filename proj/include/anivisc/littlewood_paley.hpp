#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "anivisc/spectral_field.hpp"

namespace anivisc::lp {

/// Radial cutoff: 1 on [0,1], 0 from 2 on, quintic smoothstep in between (C^2).
double chi(double t);
/// Multiplier of the block at dyadic index q: chi(2^-(q+1) t) - chi(2^-q t).
double block_weight(int q, double t);
/// Multiplier of the low-pass S_q: chi(2^-q t).
double lowpass_weight(int q, double t);

enum class Axis { vertical, horizontal };

/// Inclusive range of dyadic indices whose band meets a nonzero grid frequency.
struct IndexRange {
  int lo = 0;
  int hi = -1;
  int count() const { return hi >= lo ? hi - lo + 1 : 0; }
};
IndexRange index_range(const Grid& g, Axis axis);

SpectralField vertical_block(const SpectralField& f, int q);
SpectralField vertical_lowpass(const SpectralField& f, int q);
SpectralField horizontal_block(const SpectralField& f, int j);
SpectralField horizontal_lowpass(const SpectralField& f, int j);

/// Frequency-zero part along the axis (xi3 = 0 plane, or xi_h = 0 line).
SpectralField axis_mean(const SpectralField& f, Axis axis);

struct DyadicDecomposition {
  Axis axis = Axis::vertical;
  IndexRange range;
  SpectralField mean;
  std::vector<SpectralField> blocks;  // blocks[q - range.lo]

  const SpectralField& block(int q) const { return blocks.at(q - range.lo); }
  SpectralField sum() const;
};
DyadicDecomposition decompose(const SpectralField& f, Axis axis);

enum class BesovKind {
  anisotropic,  // double sum over (j, q)
  vertical      // sum over q only
};

struct BesovSpec {
  double s = 0.0;
  double s_prime = 0.5;
  BesovKind kind = BesovKind::vertical;
};

/// Block labels: kMean marks the zero-frequency part of an axis (weight 1);
/// for vertical-only norms j is kNone.
inline constexpr int kMean = -1000;
inline constexpr int kNone = -2000;

struct BlockLabel {
  int j = kNone;
  int q = kNone;
};

/// Weights 2^{js+qs'} and labels of every block of `spec` on grid g, in the
/// summation order (ascending q, then j; mean first on each axis).
std::vector<BlockLabel> block_labels(const Grid& g, const BesovSpec& spec);
double block_weight_factor(const BlockLabel& b, const BesovSpec& spec);

/// Weighted block L^2 norms 2^{js+qs'}||Delta_j Delta_q f|| of a scalar or
/// vector field (vector blocks use the Euclidean norm of the components).
std::vector<double> weighted_block_norms(const SpectralField* const* comps, std::size_t n_comps,
                                         const BesovSpec& spec);
std::vector<double> weighted_block_norms(const SpectralField& f, const BesovSpec& spec);
std::vector<double> weighted_block_norms(const VectorField& v, const BesovSpec& spec);

double besov_norm(const SpectralField& f, const BesovSpec& spec);
double besov_norm(const VectorField& v, const BesovSpec& spec);

/// Isotropic B^s_{2,r} norm with blocks in |xi| (mean mode weight 1); r = 1, 2 or inf.
double isotropic_besov_norm(const SpectralField& f, double s, double r);

/// Weighted block norms of a field at a sequence of snapshot times.
struct NormTimeSeries {
  BesovSpec spec;
  std::vector<BlockLabel> blocks;
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // values[snapshot][block]

  /// Throws unless t is strictly after the previous time and the block count matches.
  void append(double t, std::vector<double> block_values);
  void append(double t, const SpectralField& f);
  void append(double t, const VectorField& v);
  std::size_t size() const { return times.size(); }
};
NormTimeSeries make_series(const Grid& g, const BesovSpec& spec);

/// Chemin-Lerner norm: per-block time norm (trapezoid for r = 1, 2; max for
/// r = inf) before the block sum. Restricted to snapshots first..last
/// inclusive when given.
double chemin_lerner_norm(const NormTimeSeries& series, double r);
double chemin_lerner_norm(const NormTimeSeries& series, double r, std::size_t first,
                          std::size_t last);

struct BonyParts {
  SpectralField t1;  // sum_q S_{q-1} a Delta_q b
  SpectralField t2;  // sum_q S_{q-1} b Delta_q a
  SpectralField r;   // sum_{|q-q'|<=1} Delta_q a Delta_q' b, plus mean(a) mean(b)
};
/// Vertical paraproduct split; products are taken pointwise on the grid, so
/// t1 + t2 + r equals the grid product of a and b up to roundoff.
BonyParts bony_vertical_decompose(const SpectralField& a, const SpectralField& b);

/// Geometric sample grid t_min * ratio^k.
std::vector<double> geometric_times(double t_min, double t_max, std::size_t n);

/// Discrete L^r(dt/t) norm of t^{-s/2} ||e^{t Delta} f||_{L^p} over the
/// (geometric) samples; r = inf takes the max. Requires s < 0.
double heat_flow_norm(const SpectralField& f, double s, double p, double r,
                      const std::vector<double>& t_samples);

}  // namespace anivisc::lp
