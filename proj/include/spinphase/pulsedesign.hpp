#pragma once

// Two-pulse dynamic-phase cancellation. Pulse 1 has r1 = rabi/detuning,
// pulse 2 has r2 = -1/r1. The dynamic phases are equal and opposite while
// the rotation angles add up to the total geometric phase
//   gamma_tot = 2 arctan(r1) + 2 arctan(-1/r1) = 4 arctan(r1) - pi sign(r1).

#include "spinphase/model.hpp"
#include "spinphase/phases.hpp"

namespace spinphase {

/// Both pulses are 2*pi pulses sharing rabi == bandwidth; only the detuning
/// differs. The first pulse sits at t = 0, the second at t = spacing.
struct CancelingPair {
  double r1 = 1.0;
  PulseParams first;
  PulseParams second;
  double spacing = 0.0;  // ps

  double r2() const noexcept { return -1.0 / r1; }
};

/// Center-to-center spacing used when none is given: 14 pulse durations.
double default_spacing(double rabi);

/// Throws Error(ZeroRatio) for r1 == 0, Error(InvalidParameter) when the
/// spacing is below 10 pulse durations.
CancelingPair cancel_pair(double r1, double rabi, double spacing);
CancelingPair cancel_pair(double r1, double rabi);

/// Throws Error(ZeroRatio) for r1 == 0.
double total_geometric_phase(double r1);

enum class DesignBranch {
  /// sign(r1) = sign(gamma), |r1| >= 1; -gamma flips both detunings.
  Mirror,
  /// r1 = tan((gamma + pi)/4) in (0, inf).
  Positive,
};

/// r1 with total_geometric_phase(r1) == gamma. gamma = 0 maps to r1 = 1.
/// Throws Error(OutOfRange) for |gamma| >= pi (a single resonant pulse
/// gives exactly pi).
double design_ratio(double gamma, DesignBranch branch = DesignBranch::Mirror);

CancelingPair design_for_angle(double gamma, double rabi, double spacing,
                               DesignBranch branch = DesignBranch::Mirror);

struct CancellationResidual {
  double first = 0.0;   // alpha of pulse 1
  double second = 0.0;  // alpha of pulse 2
  double residual() const noexcept { return first + second; }
};

/// Dynamic phase of each pulse in isolation. AnalyticI ignores omega_B;
/// NumericII propagates each pulse over its own window with s.omega_B.
/// Throws Error(DecayForbidden) if s has decay enabled.
CancellationResidual verify_cancellation(const CancelingPair& pair, const SystemParams& s,
                                         PhaseMethod method = PhaseMethod::AnalyticI,
                                         const PhaseOptions& opts = {});

}  // namespace spinphase
