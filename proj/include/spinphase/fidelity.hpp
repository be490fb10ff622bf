#pragma once

// Gate reconstruction and average fidelity of the two-pulse geometric
// z-rotation under spin precession and trion decay.

#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spinphase/model.hpp"
#include "spinphase/propagator.hpp"
#include "spinphase/pulsedesign.hpp"

namespace spinphase {

enum class IdealConvention {
  /// Free precession over the whole window with each pulse replaced by an
  /// instantaneous z-rotation at its center:
  ///   P(t2 -> t_end) Rz(phi2) P(t1 -> t2) Rz(phi1) P(t_start -> t1)
  Interleaved,
  /// Rz(gamma_tot) alone; precession counts as error.
  Bare,
};

std::string_view to_string(IdealConvention c) noexcept;

/// Defaults are the experimental parameter set: |g| = 0.57, 1.5 ps pulses,
/// 900 ps trion lifetime, 14 pulse durations between centers.
struct GateParams {
  double g = constants::electron_g;
  double pulse_duration = 1.5;  // ps, FWHM
  double trion_lifetime = 900.0;  // ps; infinity disables decay
  std::optional<double> spacing;  // ps; default 14 * pulse_duration
  double window_durations = 7.0;  // half-window around each pulse, in pulse durations
  IdealConvention ideal = IdealConvention::Interleaved;
  DesignBranch branch = DesignBranch::Mirror;
  IntegratorOpts integrator{};
};

struct GateReport {
  Matrix2 actual;                   // truncated, possibly nonunitary
  Matrix2 ideal;
  double fidelity = 0.0;
  double residual_population = 0.0;  // 1 - |U|z>|^2 over all three levels
  double field = 0.0;                // Tesla
  double gamma = 0.0;                // target total geometric phase
};

/// diag(1, e^{i gamma}) in the basis (|zbar>, |z>).
Matrix2 ideal_rotation(double gamma);

/// exp(-i omega_B sigma_x dt) on the qubit block.
Matrix2 free_precession(double omega_b, double dt);

/// With I = U^dagger U_id:
///   F = 1/3 sum_i |I_ii|^2 + 1/6 sum_{i != j} (|I_ij|^2 + I_ii I_jj^*).
/// Throws Error(NonContraction) if U has a singular value above 1 + 1e-6,
/// Error(InvalidParameter) if U_id is not unitary.
double average_fidelity(const Matrix2& u, const Matrix2& u_ideal);

/// Builds the canceling pair for |gamma| < pi (a single resonant pulse for
/// |gamma| == pi), propagates with precession and decay, and scores the
/// truncated operator. Throws Error(OutOfRange) for |gamma| > pi.
GateReport gate_report(double gamma, double field_tesla, const GateParams& params = {});

/// Field-major: all gammas for fields[0], then fields[1], ...
std::vector<GateReport> fidelity_sweep(std::span<const double> gammas,
                                       std::span<const double> fields,
                                       const GateParams& params = {});

struct PopulationPoint {
  double gamma = 0.0;
  double loss = 0.0;  // 1 - final norm^2 starting from |z>
};

std::vector<PopulationPoint> population_sweep(std::span<const double> gammas, double field_tesla,
                                              const GateParams& params = {});

}  // namespace spinphase
