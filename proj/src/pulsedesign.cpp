#include "spinphase/pulsedesign.hpp"

#include <cmath>
#include <numbers>

#include "spinphase/error.hpp"

namespace spinphase {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinSpacingDurations = 10.0;
constexpr double kDefaultSpacingDurations = 14.0;

void require_nonzero(double r1) {
  if (r1 == 0.0) throw Error(ErrorCode::ZeroRatio, "ratio r1 must be nonzero");
  if (std::isnan(r1)) throw Error(ErrorCode::InvalidParameter, "ratio r1 is NaN");
}

double dynamic_phase_of(const PulseParams& p, const SystemParams& s, PhaseMethod method,
                        const PhaseOptions& opts) {
  if (method == PhaseMethod::AnalyticI) {
    return dynamic_phase_analytic(p.rabi, p.detuning, opts.analytic_window);
  }
  PulseParams centered = p;
  centered.center = 0.0;
  const PulseSchedule sched = PulseSchedule::around({centered}, opts.numeric_half_window);
  const Trajectory traj = propagate(basis_state(kZ), sched, s, opts.integrator);
  return dynamic_phase_numeric(traj, sched, s);
}

}  // namespace

double default_spacing(double rabi) {
  return kDefaultSpacingDurations * duration_from_bandwidth(rabi);
}

CancelingPair cancel_pair(double r1, double rabi, double spacing) {
  require_nonzero(r1);
  if (!std::isfinite(r1)) throw Error(ErrorCode::InvalidParameter, "ratio r1 must be finite");
  const double min_spacing = kMinSpacingDurations * duration_from_bandwidth(rabi);
  if (!(spacing >= min_spacing) || !std::isfinite(spacing)) {
    throw Error(ErrorCode::InvalidParameter, "pulse spacing must be at least 10 pulse durations");
  }
  CancelingPair pair;
  pair.r1 = r1;
  pair.first = two_pi_pulse(rabi, rabi / r1, 0.0);
  pair.second = two_pi_pulse(rabi, -rabi * r1, spacing);
  pair.spacing = spacing;
  return pair;
}

CancelingPair cancel_pair(double r1, double rabi) {
  return cancel_pair(r1, rabi, default_spacing(rabi));
}

double total_geometric_phase(double r1) {
  require_nonzero(r1);
  return 2.0 * std::atan(r1) + 2.0 * std::atan(-1.0 / r1);
}

double design_ratio(double gamma, DesignBranch branch) {
  if (!(std::abs(gamma) < kPi)) {
    throw Error(ErrorCode::OutOfRange,
                "|gamma| must be below pi; use a single resonant pulse for a rotation of pi");
  }
  if (gamma == 0.0) return 1.0;
  if (branch == DesignBranch::Positive) return std::tan((gamma + kPi) / 4.0);
  const double magnitude = std::tan((std::abs(gamma) + kPi) / 4.0);
  return gamma < 0.0 ? -magnitude : magnitude;
}

CancelingPair design_for_angle(double gamma, double rabi, double spacing, DesignBranch branch) {
  return cancel_pair(design_ratio(gamma, branch), rabi, spacing);
}

CancellationResidual verify_cancellation(const CancelingPair& pair, const SystemParams& s,
                                         PhaseMethod method, const PhaseOptions& opts) {
  if (s.decay_enabled && std::isfinite(s.trion_lifetime)) {
    throw Error(ErrorCode::DecayForbidden, "cancellation is checked on decay-free evolution");
  }
  return CancellationResidual{dynamic_phase_of(pair.first, s, method, opts),
                              dynamic_phase_of(pair.second, s, method, opts)};
}

}  // namespace spinphase
