#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>

#include "anivisc/spectral_field.hpp"

namespace anivisc {

enum class Scheme { if_rk2, if_rk4 };

struct StepperConfig {
  double dt = 0.01;
  double t_end = 1.0;
  Scheme scheme = Scheme::if_rk4;
  int snapshot_stride = 4;
  bool dealias = true;
  double cfl = 0.5;

  /// Number of steps; t_end must be a whole number of steps.
  std::size_t steps() const;
  /// Throws std::invalid_argument on dt <= 0, stride < 1 or t_end not a multiple of dt.
  void validate() const;
  /// Step indices at which snapshots are taken: multiples of the stride and the last step.
  bool is_snapshot_step(std::size_t k) const;
  std::size_t snapshot_count() const;
};

/// Thrown when dt exceeds cfl * spacing / max|u|; carries a dt that would pass.
class CflViolation : public std::runtime_error {
 public:
  CflViolation(double dt, double advisory_dt);
  double advisory_dt() const { return advisory_; }

 private:
  double advisory_;
};

double kinetic_energy(const VectorField& u);       // 1/2 ||u||^2
double horizontal_dissipation(const VectorField& u);  // ||grad_h u||^2
/// ||div u|| / sum_i ||d_i u_i|| (0 for fields without derivative content).
double divergence_defect(const VectorField& u);

/// Rejects a nonzero global mean and fields that are not divergence-free
/// (defect above 1e-8); returns the Leray-projected field.
VectorField prepare_initial_velocity(const VectorField& u0);

struct StepOutcome {
  VelocityState state;
  double dissipation = 0.0;  // integral of ||grad_h u||^2 over the step
  double max_speed = 0.0;
};

/// One integrating-factor Runge-Kutta step of
///   d_t u + P div(u (x) u) = Delta_h u.
/// Throws CflViolation when the step is too large for the current field.
StepOutcome step_nsh_tracked(const VelocityState& state, const StepperConfig& cfg);
VelocityState step_nsh(const VelocityState& state, const StepperConfig& cfg);

struct NshRunSummary {
  double initial_energy = 0.0;
  double final_energy = 0.0;
  double dissipation = 0.0;
  double max_divergence = 0.0;
  std::size_t steps = 0;
};

/// Called with each snapshot (t = 0, every stride steps, and the last step)
/// and its running index.
using SnapshotObserver = std::function<void(const VelocityState&, std::size_t)>;

/// Integrates from u0 (validated and projected first) over [0, t_end].
NshRunSummary run_nsh(const VectorField& u0, const StepperConfig& cfg,
                      const SnapshotObserver& observer = {});

}  // namespace anivisc
