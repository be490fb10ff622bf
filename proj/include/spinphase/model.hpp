#pragma once

// Physical types and the interaction-picture Hamiltonian of a charged quantum
// dot driven by hyperbolic-secant pulses.
//
// Units: times in ps, angular frequencies in rad/ps, hbar = 1. Conversions
// from Tesla and g-factor happen only in larmor_from_field().
//
// Basis ordering is {|zbar>, |z>, |tau>}: the two electron spin states along
// the optical axis and the trion. Only |z> couples to the trion.

#include <complex>
#include <limits>

#include <Eigen/Dense>

namespace spinphase {

using cplx = std::complex<double>;
using StateVector = Eigen::Vector3cd;
using Matrix3 = Eigen::Matrix3cd;
using Matrix2 = Eigen::Matrix2cd;

enum Level : int { kZbar = 0, kZ = 1, kTau = 2 };

StateVector basis_state(Level level);

/// Sum of |C_i|^2.
double population(const StateVector& psi);

namespace constants {
inline constexpr double bohr_magneton = 9.2740100783e-24;  // J/T
inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double electron_g = 0.57;                 // |g_e|, InGaAs dots
inline constexpr double ps_per_s = 1e12;
}  // namespace constants

/// One sech pulse, Omega(t) = rabi * sech(bandwidth * (t - center)), carrier
/// detuned by `detuning` from the |z> <-> |tau> transition.
struct PulseParams {
  double rabi = 1.0;       // rad/ps, > 0
  double detuning = 0.0;   // rad/ps, signed
  double bandwidth = 1.0;  // rad/ps, > 0
  double center = 0.0;     // ps

  /// Validating constructor; throws Error(InvalidParameter).
  static PulseParams make(double rabi, double detuning, double bandwidth, double center = 0.0);

  /// rabi == bandwidth exactly, i.e. area 2*pi.
  bool is_two_pi() const noexcept { return rabi == bandwidth; }

  /// rabi / detuning; +inf on resonance.
  double ratio() const noexcept;
};

/// A 2*pi pulse: rabi is set equal to `bandwidth` bit-for-bit.
PulseParams two_pi_pulse(double bandwidth, double detuning, double center = 0.0);

/// Same pulse parameterized by r = rabi/detuning. r = +-inf means resonance.
PulseParams two_pi_pulse_for_ratio(double bandwidth, double ratio, double center = 0.0);

struct SystemParams {
  double omega_b = 0.0;  // rad/ps, >= 0
  double trion_lifetime = std::numeric_limits<double>::infinity();  // ps
  bool decay_enabled = false;

  static SystemParams closed(double omega_b);
  static SystemParams with_decay(double omega_b, double trion_lifetime);

  void validate() const;

  /// omega_b / bandwidth < 0.1.
  bool slow_precession(double bandwidth) const noexcept;
};

double sech_envelope(double t, const PulseParams& p) noexcept;

/// 2 * integral of the envelope over all time: 2*pi*rabi/bandwidth.
double pulse_area(const PulseParams& p) noexcept;

/// Off-diagonal coupling rabi*sech(...)*exp(-i*detuning*(t - center)), i.e.
/// the (|z>, |tau>) matrix element contributed by one pulse. The detuning
/// phase is anchored at the pulse's own center.
cplx pulse_coupling(double t, const PulseParams& p) noexcept;

/// H(t)/hbar for a single pulse. With decay enabled the trion diagonal gets
/// -i/(2 tau_t), which makes a bare trion population decay as exp(-t/tau_t).
Matrix3 hamiltonian(double t, const PulseParams& p, const SystemParams& s) noexcept;

/// Precession-only part of the Hamiltonian (no pulse, optional decay).
Matrix3 free_hamiltonian(const SystemParams& s) noexcept;

/// omega_B = g * mu_B * B / (2 hbar) in rad/ps. A spin starting in |z>
/// precesses as |<z|psi>|^2 = cos^2(omega_B t), period pi/omega_B.
double larmor_from_field(double field_tesla, double g = constants::electron_g);

/// The pulse duration is taken as the FWHM of the sech amplitude:
/// bandwidth = 2 arccosh(2) / duration.
double bandwidth_from_duration(double duration_ps);
double duration_from_bandwidth(double bandwidth);

}  // namespace spinphase
