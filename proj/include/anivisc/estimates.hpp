#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "anivisc/littlewood_paley.hpp"
#include "anivisc/spectral_field.hpp"

// Numerical checks of the inequalities used by the remainder estimate. Every
// check reports LHS/RHS ratios; constants are never asserted, only their
// boundedness across a dyadic sweep.

namespace anivisc::est {

struct RatioSample {
  int index = 0;           // dyadic index of the sweep (q or j)
  std::uint64_t seed = 0;  // sample seed, 0 for deterministic inputs
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct RatioReport {
  std::string id;
  std::string grid;  // "n_h x n_h x n_v, m"
  std::vector<RatioSample> samples;
  std::size_t filtered = 0;  // samples dropped for 0/0

  /// Keeps the sample when rhs > 0; drops 0/0; throws std::domain_error for
  /// a positive lhs over a zero rhs.
  void add(int index, std::uint64_t seed, double lhs, double rhs);
  void merge(const RatioReport& other);
  double max_ratio() const;
  /// Largest ratio per sweep index, ascending index.
  std::vector<std::pair<int, double>> index_maxima() const;
  /// max / min of the per-index maxima (1 for a single index, 0 if empty).
  double spread() const;
};

std::string describe(const Grid& g);

/// Mixed Lebesgue norm computed on a grid oversampled by `oversample`:
/// the inner norm runs over `inner` (x3 for vertical, x_h for horizontal),
/// the outer norm over the remaining variables. p = INFINITY is allowed.
double mixed_norm(const SpectralField& f, lp::Axis inner, double p_inner, double p_outer,
                  int oversample = 2);

/// Random sample fields: horizontally low (|xi_h| <= 2) with vertical
/// support in [v_min, v_max]; seeds are seed0 + i.
std::vector<SpectralField> vertical_band_samples(const Grid& g, double v_min, double v_max,
                                                 std::size_t n, std::uint64_t seed0);
/// Horizontal support in [h_min, h_max], vertically low (|xi3| <= 2).
std::vector<SpectralField> horizontal_band_samples(const Grid& g, double h_min, double h_max,
                                                   std::size_t n, std::uint64_t seed0);

/// ||d3^alpha a||_{L^2_h L^p1_v} / (2^{q(alpha + 1/p2 - 1/p1)} ||a||_{L^2_h L^p2_v}).
/// Requires p2 <= p1 and vertical support in |xi3| <= 2^q; throws
/// std::invalid_argument otherwise and for an identically zero sample.
RatioReport check_bernstein_vertical(const std::vector<SpectralField>& samples, int q, int alpha,
                                     double p1, double p2,
                                     const std::vector<std::uint64_t>& seeds = {});

/// ||a||_{L^2_h L^p_v} / (2^-q ||d3 a||_{L^2_h L^p_v}) for samples supported in
/// the ring 2^q <= |xi3| <= 2^{q+1}; throws std::invalid_argument on a
/// support violation.
RatioReport check_inverse_bernstein(const std::vector<SpectralField>& samples, int q, double p = 2.0,
                                    const std::vector<std::uint64_t>& seeds = {});

/// ||a||_{L^2_v L^p1_h} / (2^{2j(1/p2 - 1/p1)} ||a||_{L^2_v L^p2_h}) for
/// samples with |xi_h| <= 2^j.
RatioReport check_bernstein_horizontal(const std::vector<SpectralField>& samples, int j, double p1,
                                       double p2, const std::vector<std::uint64_t>& seeds = {});

/// (sum_q 2^{qs}||grad_h Delta_q a|| + sum_q 2^{qs}||Delta_q a||_{L^inf_h L^2_v}) / ||a||_{B^{1,s}}.
/// Zero samples are filtered. `index` labels the sweep position of the samples.
RatioReport check_estimate11(const std::vector<SpectralField>& samples, double s, int index = 0,
                             const std::vector<std::uint64_t>& seeds = {});

/// The three product laws, evaluated with exact (2x padded) products:
///   [0] ||ab||_{B^{1,s}}   / (||a||_{B^{1,s}}   ||b||_{B^{1,s}})     (needs s >= 1/2)
///   [1] ||ab||_{B^{0,s}}   / (||a||_{B^{1/2,s}} ||b||_{B^{1/2,s}})
///   [2] ||ab||_{B^{0,s}}   / (||a||_{B^{1,s}}   ||b||_{B^{0,s}})
std::vector<RatioReport> check_product_laws(const std::vector<std::pair<SpectralField, SpectralField>>& pairs,
                                            double s, int index = 0,
                                            const std::vector<std::uint64_t>& seeds = {});

/// Exact product of two fields on a grid padded by 2 in every direction.
SpectralField padded_product(const SpectralField& a, const SpectralField& b);

/// (Delta_q f | Delta_q g)_{L^2} for vector fields.
double block_inner(const VectorField& f, const VectorField& g, int q);

/// Remainder R = u - u_app with the fields that drive it, at snapshot times.
/// `forcing` is G with d_t R + P(R.grad R + u_app.grad R + R.grad u_app) - Delta_h R = -P G.
struct RemainderTrajectory {
  std::vector<double> times;
  std::vector<VectorField> r;
  std::vector<VectorField> uapp;
  std::vector<VectorField> forcing;
};

struct BlockEnergyTerms {
  double energy_start = 0.0;  // 1/2 ||Delta_q R(t_a)||^2
  double energy_end = 0.0;    // 1/2 ||Delta_q R(t_b)||^2
  double dissipation = 0.0;   // int ||grad_h Delta_q R||^2
  double rr = 0.0;            // int (Delta_q(R.grad R) | Delta_q R)
  double ur = 0.0;            // int (Delta_q(u_app.grad R) | Delta_q R)
  double ru = 0.0;            // int (Delta_q(R.grad u_app) | Delta_q R)
  double force = 0.0;         // int (Delta_q G | Delta_q R)
  double residual = 0.0;      // balance defect
  double relative = 0.0;      // residual / sum of magnitudes (0 when all vanish)
};

/// Per-block energy balance of the remainder over snapshots first..last,
/// with Simpson quadrature in time (trapezoid for an odd interval count).
/// Throws std::out_of_range for q outside the grid's range.
BlockEnergyTerms check_block_energy_balance(const RemainderTrajectory& traj, int q,
                                            std::size_t first, std::size_t last);

enum class Trilinear { rr, ur };

struct TrilinearReport {
  RatioReport ratios;       // per q: 2^q int |(Delta_q(u.grad v) | Delta_q v)| / norm product
  double sqrt_sum = 0.0;    // sum_q ratio_q^{1/2}
};

/// Trilinear estimates over snapshots first..last of u (advecting) and v.
/// For Trilinear::rr v is ignored and u is used for both. Time norms are
/// Chemin-Lerner norms of B^{0,1/2}.
TrilinearReport check_trilinear(Trilinear kind, const std::vector<VectorField>& u,
                                const std::vector<VectorField>& v, const std::vector<double>& times,
                                std::size_t first, std::size_t last);

/// J_q term of the remainder/approximation interaction:
///   2^q int |(Delta_q(R^3 u_app) | d3 Delta_q R)| / (||R||^2_{L~inf B^{0,1/2}} ||d3 u_app||_{L~1 B^{1,1/2}})
TrilinearReport check_jq(const RemainderTrajectory& traj, std::size_t first, std::size_t last);

/// Horizontal gradient components (d1 v_c, d2 v_c), c = 0..2.
std::vector<SpectralField> horizontal_gradient(const VectorField& v);

}  // namespace anivisc::est
