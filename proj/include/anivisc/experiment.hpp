#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "anivisc/approx.hpp"
#include "anivisc/estimates.hpp"
#include "anivisc/initial_data.hpp"
#include "anivisc/littlewood_paley.hpp"
#include "anivisc/nsh_solver.hpp"
#include "anivisc/partition.hpp"

namespace anivisc {

/// Slice solution u^h and transported w3 at the snapshot times of cfg, on
/// the unit-period grid. Nothing here depends on eps.
struct ApproxTrajectory {
  StepperConfig cfg;
  std::vector<double> times;
  std::vector<SpectralField> u1, u2, w3;

  std::size_t size() const { return times.size(); }
  ApproxProfiles profiles(std::size_t k) const;
  /// u_app(t_k) on the grid stretched by 2^m.
  VectorField uapp(std::size_t k, int m) const;
  /// u_app(t_k) pulled back to the unit grid: (u^h + eps w^h, w3).
  VectorField uapp_pulled(std::size_t k, int m) const;
};

ApproxTrajectory solve_approx(const Profiles& p, const StepperConfig& cfg);

struct UappNorms {
  double linf_b0 = 0.0;   // ||u_app||_{L~inf B^{0,1/2}}
  double l2_b1 = 0.0;     // ||u_app||_{L~2 B^{1,1/2}}
  double d3_l2_b0 = 0.0;  // ||d3 u_app||_{L~2 B^{0,1/2}} (anisotropic)
  double l2_b0 = 0.0;     // ||u_app||_{L~2 B^{0,1/2}} (anisotropic)
  double d3_l1_b1 = 0.0;  // ||d3 u_app||_{L^1 B^{1,1/2}}
};

/// Block-norm time series behind UappNorms; also feeds the time partition.
struct UappSeries {
  lp::NormTimeSeries b0;      // vertical B^{0,1/2}
  lp::NormTimeSeries b1;      // anisotropic B^{1,1/2}
  lp::NormTimeSeries b0_an;   // anisotropic B^{0,1/2}
  lp::NormTimeSeries d3_b0;   // of d3 u_app, anisotropic B^{0,1/2}
  lp::NormTimeSeries d3_b1;   // of d3 u_app, anisotropic B^{1,1/2}

  explicit UappSeries(const Grid& g);
  /// d3u is the vertical derivative in the same convention as u.
  void append(double t, const VectorField& u, const VectorField& d3u);
  UappNorms norms() const;
};

/// Norms of a trajectory as given (d3 computed on its own grid, times d3_scale).
/// Throws std::invalid_argument for an empty trajectory.
UappNorms compute_uapp_norms(const std::vector<double>& times, const std::vector<VectorField>& uapp,
                             double d3_scale = 1.0);

/// Norms of u_app for stretch m, reported on pulled-back fields: the
/// homogeneous vertical blocks of B^{s,1/2} are dilation invariant, so this
/// fixes the convention for the mean modes (per unit-period box).
UappSeries uapp_series(const ApproxTrajectory& a, int m);
UappNorms compute_uapp_norms(const ApproxTrajectory& a, int m);

struct PressureBounds {
  double d3_p0 = 0.0;     // ||d3 p0||_{L^1 B^{0,1/2}}
  double d3_p1h = 0.0;    // ||d3 p1h||_{L^1 B^{0,1/2}}
  double gradh_p13 = 0.0;  // ||grad_h p13||_{L^1 B^{0,1/2}}
};
/// Pressure norms on pulled-back profiles (eps-independent in this convention).
PressureBounds verify_pressure_bounds(const ApproxTrajectory& a);

/// sup_t ||M||_{B^{0,1/2}} of the w^h momentum residual (unit grid).
double wh_residual_sup(const ApproxTrajectory& a);

struct SweepConfig {
  std::vector<int> m_values{1, 2, 3, 4};
  int n_h = 64;
  int n_v = 64;
  StepperConfig stepper{0.01, 1.0, Scheme::if_rk4, 4, true, 0.5};
  double cbar = 0.1;  // chunk product bound 1/cbar
  double solver_tolerance = 1e-12;
  double blowup_factor = 1e3;
  double tail_limit = 1e-8;
  bool largeness = true;

  /// Throws std::invalid_argument for an empty or non-increasing m list.
  void validate() const;
};

struct SweepRow {
  int m = 0;
  double eps = 0.0;
  double sup_r_b0 = 0.0;      // sup_t ||R||_{B^{0,1/2}}
  double l2_gradh_r = 0.0;    // ||grad_h R||_{L~2 B^{0,1/2}}
  double tail_density = 0.0;  // ||grad_h R(t_end)||_{B^{0,1/2}}
  UappNorms uapp;
  PressureBounds pressure;
  Partition partition;
  double largeness = 0.0;     // heat-flow size proxy of u0
  double energy_defect = 0.0;  // |E(T) + D - E(0)| / E(0)
  double max_divergence = 0.0;
};

struct LogLogFit {
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  double residual = std::numeric_limits<double>::quiet_NaN();  // rms of log residuals
};
/// Least squares of ln(values) against ln(eps); needs two positive points.
LogLogFit fit_loglog(const std::vector<double>& eps, const std::vector<double>& values);

struct ExperimentReport {
  static constexpr int kSchemaVersion = 1;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  InitialDataSpec spec;
  SweepConfig sweep;
  ProfileNorms profile_norms;
  double wh_residual = 0.0;
  std::vector<SweepRow> rows;
  LogLogFit fit;
};

/// For every m: solve (NS)_h from u0 = [u0h + eps w0h, w0_3]_eps, compare with
/// u_app, and record remainder and u_app norms. Throws std::runtime_error when
/// the solution norm exceeds blowup_factor times its initial value.
ExperimentReport run_remainder_experiment(const InitialDataSpec& spec, const SweepConfig& sweep);

/// Remainder, u_app and the remainder forcing eps F + eps [(M, 0)]_eps at every
/// snapshot, on the stretched grid.
est::RemainderTrajectory remainder_trajectory(const Profiles& p, int m, const StepperConfig& cfg);

}  // namespace anivisc
