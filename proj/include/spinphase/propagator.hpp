#pragma once

// Fixed-step RK4 integration of i dpsi/dt = H(t) psi for pulse trains in the
// three-level system, with optional precession and trion decay.

#include <cstddef>
#include <functional>
#include <vector>

#include "spinphase/model.hpp"

namespace spinphase {

/// Ordered, non-overlapping pulses plus the integration window [t_start, t_end].
struct PulseSchedule {
  std::vector<PulseParams> pulses;
  double t_start = 0.0;
  double t_end = 0.0;

  /// Validating constructor; throws Error(InvalidSchedule).
  static PulseSchedule make(std::vector<PulseParams> pulses, double t_start, double t_end);

  /// Window [first.center - k*tau_d, last.center + k*tau_d], tau_d being the
  /// FWHM duration of the respective pulse. Requires at least one pulse.
  static PulseSchedule around(std::vector<PulseParams> pulses, double half_width_durations = 7.0);

  void validate() const;
};

/// Envelopes below this fraction of their peak count as "off" for the
/// non-overlap check.
inline constexpr double kOverlapThreshold = 1e-5;

/// Minimum margin between a pulse center and the window edge, in units of 1/bandwidth.
inline constexpr double kWindowMargin = 5.0;

/// Bound on dt * max(rabi, |detuning|, omega_B).
inline constexpr double kResolutionGuard = 0.1;

struct IntegratorOpts {
  double dt = 0.0;            // ps; 0 selects dt from `resolution`
  double resolution = 0.004;  // dt * max rate when dt is chosen automatically
  std::size_t sample_stride = 1;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> norms;  // squared norm, i.e. total population
  bool decay_enabled = false;

  const StateVector& final_state() const { return states.back(); }
  std::size_t size() const noexcept { return times.size(); }
};

using HamiltonianFn = std::function<Matrix3(double)>;

/// Generic RK4 over [t0, t1] in `steps` equal steps; t1 < t0 integrates
/// backwards. Samples every `stride` steps; the first and last points are
/// always kept.
Trajectory integrate(const StateVector& psi0, const HamiltonianFn& h, double t0, double t1,
                     std::size_t steps, std::size_t stride = 1);

/// Sum of free Hamiltonian and all pulse couplings, each pulse in its own
/// detuning frame.
Matrix3 schedule_hamiltonian(double t, const PulseSchedule& sched, const SystemParams& s);

/// Largest of rabi, |detuning|, omega_B over the schedule.
double max_rate(const PulseSchedule& sched, const SystemParams& s);

/// Time step propagate() will use; throws Error(StepTooLarge) if a
/// user-supplied dt violates the resolution guard.
double step_size(const PulseSchedule& sched, const SystemParams& s, const IntegratorOpts& opts);

/// Throws Error(StepTooLarge), Error(NormBlowup), Error(InvalidSchedule).
Trajectory propagate(const StateVector& psi0, const PulseSchedule& sched, const SystemParams& s,
                     const IntegratorOpts& opts = {});

/// Columns are the final states for initial |zbar>, |z>, |tau>.
Matrix3 evolve_operator(const PulseSchedule& sched, const SystemParams& s,
                        const IntegratorOpts& opts = {});

/// Upper-left block in the qubit basis (|zbar>, |z>), not renormalized.
Matrix2 truncate_qubit(const Matrix3& u);

}  // namespace spinphase
