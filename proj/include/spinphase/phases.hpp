#pragma once

// Dynamic / geometric decomposition of the phase a 2*pi sech pulse imprints
// on |z>. Two independent routes:
//   AnalyticI  - closed-form Rosen-Zener state, dynamic phase by adaptive
//                quadrature of the analytic integrand (no precession).
//   NumericII  - full three-level propagation, dynamic phase by trapezoid
//                rule on the trajectory (precession included).

#include <span>
#include <string_view>
#include <vector>

#include "spinphase/model.hpp"
#include "spinphase/propagator.hpp"

namespace spinphase {

enum class PhaseMethod { AnalyticI, NumericII };

std::string_view to_string(PhaseMethod m) noexcept;

struct PhaseDecomposition {
  double overall = 0.0;    // phi
  double dynamic = 0.0;    // alpha
  double geometric = 0.0;  // gamma = phi - alpha
  PhaseMethod method = PhaseMethod::AnalyticI;
  double ratio = 0.0;      // rabi / detuning, +-inf on resonance
};

struct PhaseOptions {
  /// Quadrature half-window for AnalyticI, in units of 1/rabi.
  double analytic_window = 20.0;
  /// Propagation half-window for NumericII, in pulse durations (FWHM).
  double numeric_half_window = 7.0;
  IntegratorOpts integrator{};
};

/// Dynamic phase of a 2*pi pulse (bandwidth == rabi) from the analytic state:
///   alpha = rabi^2/(detuning^2 + rabi^2) * Int sech^2(rabi t) [ e^{-i detuning t}
///           (1 - tanh)^{-i detuning/2 rabi} (1 + tanh)^{i detuning/2 rabi}
///           (detuning - i rabi tanh) + c.c. ] dt
/// over [-window/rabi, window/rabi], adaptive Simpson to 1e-9 absolute.
/// Resonance returns exactly 0. Throws Error(QuadratureFailure),
/// Error(InvalidParameter) if window < 10 or rabi <= 0.
double dynamic_phase_analytic(double rabi, double detuning, double window = 20.0);

/// Split of -Int <psi|H|psi> dt into the pulse-coupling part and the
/// precession (omega_B) part.
struct DynamicPhaseTerms {
  double pulse = 0.0;
  double precession = 0.0;
  double total() const noexcept { return pulse + precession; }
};

/// Throws Error(DecayForbidden) if the trajectory was produced with decay.
DynamicPhaseTerms dynamic_phase_terms(const Trajectory& traj, const PulseSchedule& sched,
                                      const SystemParams& s);

/// -Int <psi(t)|H(t)|psi(t)> dt by the trapezoid rule on the trajectory grid.
double dynamic_phase_numeric(const Trajectory& traj, const PulseSchedule& sched,
                             const SystemParams& s);

/// 2*pi pulse with bandwidth == rabi centered at 0. NumericII reads phi from
/// arg <z|psi(t_end)> on the branch nearest 2 arctan(rabi/detuning).
PhaseDecomposition decompose(double rabi, double detuning, PhaseMethod method,
                             const SystemParams& s, const PhaseOptions& opts = {});

/// One decomposition per ratio r = rabi/detuning, in input order. NumericII
/// phases are unwrapped by continuity along increasing |r| on each sign,
/// starting from the smallest |r| where phi ~ 2r. Entries are evaluated
/// concurrently.
std::vector<PhaseDecomposition> sweep_ratio(std::span<const double> ratios, PhaseMethod method,
                                            const SystemParams& s, double rabi,
                                            const PhaseOptions& opts = {});

}  // namespace spinphase
