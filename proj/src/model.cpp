#include "spinphase/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spinphase/error.hpp"

namespace spinphase {

namespace {

const double kFwhmFactor = 2.0 * std::acosh(2.0);

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, message);
}

}  // namespace

StateVector basis_state(Level level) {
  StateVector psi = StateVector::Zero();
  psi(level) = 1.0;
  return psi;
}

double population(const StateVector& psi) { return psi.squaredNorm(); }

PulseParams PulseParams::make(double rabi, double detuning, double bandwidth, double center) {
  require(std::isfinite(rabi) && rabi > 0.0, "pulse Rabi amplitude must be positive and finite");
  require(std::isfinite(bandwidth) && bandwidth > 0.0,
          "pulse bandwidth must be positive and finite");
  require(std::isfinite(detuning), "pulse detuning must be finite");
  require(std::isfinite(center), "pulse center must be finite");
  return PulseParams{rabi, detuning, bandwidth, center};
}

double PulseParams::ratio() const noexcept {
  if (detuning == 0.0) return std::numeric_limits<double>::infinity();
  return rabi / detuning;
}

PulseParams two_pi_pulse(double bandwidth, double detuning, double center) {
  return PulseParams::make(bandwidth, detuning, bandwidth, center);
}

PulseParams two_pi_pulse_for_ratio(double bandwidth, double ratio, double center) {
  require(ratio != 0.0 && !std::isnan(ratio), "ratio rabi/detuning must be nonzero");
  const double detuning = std::isinf(ratio) ? 0.0 : bandwidth / ratio;
  return two_pi_pulse(bandwidth, detuning, center);
}

SystemParams SystemParams::closed(double omega_b) {
  SystemParams s{omega_b, std::numeric_limits<double>::infinity(), false};
  s.validate();
  return s;
}

SystemParams SystemParams::with_decay(double omega_b, double trion_lifetime) {
  SystemParams s{omega_b, trion_lifetime, true};
  s.validate();
  return s;
}

void SystemParams::validate() const {
  require(std::isfinite(omega_b) && omega_b >= 0.0, "omega_B must be finite and >= 0");
  if (decay_enabled) {
    require(trion_lifetime > 0.0 && !std::isnan(trion_lifetime),
            "trion lifetime must be positive when decay is enabled");
  }
}

bool SystemParams::slow_precession(double bandwidth) const noexcept {
  return omega_b / bandwidth < 0.1;
}

double sech_envelope(double t, const PulseParams& p) noexcept {
  const double x = p.bandwidth * (t - p.center);
  // cosh overflows to inf for |x| > ~710, giving the correct limit 0.
  return p.rabi / std::cosh(x);
}

double pulse_area(const PulseParams& p) noexcept {
  return 2.0 * std::numbers::pi * p.rabi / p.bandwidth;
}

cplx pulse_coupling(double t, const PulseParams& p) noexcept {
  const double envelope = sech_envelope(t, p);
  if (envelope == 0.0) return {0.0, 0.0};
  return std::polar(envelope, -p.detuning * (t - p.center));
}

Matrix3 free_hamiltonian(const SystemParams& s) noexcept {
  Matrix3 h = Matrix3::Zero();
  h(kZbar, kZ) = s.omega_b;
  h(kZ, kZbar) = s.omega_b;
  if (s.decay_enabled && std::isfinite(s.trion_lifetime)) {
    h(kTau, kTau) = cplx(0.0, -0.5 / s.trion_lifetime);
  }
  return h;
}

Matrix3 hamiltonian(double t, const PulseParams& p, const SystemParams& s) noexcept {
  Matrix3 h = free_hamiltonian(s);
  const cplx coupling = pulse_coupling(t, p);
  h(kZ, kTau) = coupling;
  h(kTau, kZ) = std::conj(coupling);
  return h;
}

double larmor_from_field(double field_tesla, double g) {
  require(std::isfinite(field_tesla) && field_tesla >= 0.0, "magnetic field must be >= 0");
  require(std::isfinite(g), "g-factor must be finite");
  return g * constants::bohr_magneton * field_tesla / (2.0 * constants::hbar) /
         constants::ps_per_s;
}

double bandwidth_from_duration(double duration_ps) {
  require(std::isfinite(duration_ps) && duration_ps > 0.0, "pulse duration must be positive");
  return kFwhmFactor / duration_ps;
}

double duration_from_bandwidth(double bandwidth) {
  require(std::isfinite(bandwidth) && bandwidth > 0.0, "bandwidth must be positive");
  return kFwhmFactor / bandwidth;
}

}  // namespace spinphase
