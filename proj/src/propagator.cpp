#include "spinphase/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spinphase/error.hpp"

namespace spinphase {

namespace {

constexpr double kNormLimit = 1.0 + 1e-6;

// One RK4 step for dy/dt = -i H(t) y, with y a state or a stack of states.
template <typename Y>
Y rk4_step(const Y& y, const Matrix3& h0, const Matrix3& h_mid, const Matrix3& h1, double dt) {
  const cplx minus_i(0.0, -1.0);
  const Y k1 = minus_i * (h0 * y);
  const Y k2 = minus_i * (h_mid * (y + (0.5 * dt) * k1));
  const Y k3 = minus_i * (h_mid * (y + (0.5 * dt) * k2));
  const Y k4 = minus_i * (h1 * (y + dt * k3));
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double half_width(const PulseParams& p) {
  return std::acosh(1.0 / kOverlapThreshold) / p.bandwidth;
}

std::size_t step_count(double span, double dt) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::abs(span) / dt - 1e-9)));
}

bool decays(const SystemParams& s) {
  return s.decay_enabled && std::isfinite(s.trion_lifetime);
}

}  // namespace

PulseSchedule PulseSchedule::make(std::vector<PulseParams> pulses, double t_start, double t_end) {
  PulseSchedule sched{std::move(pulses), t_start, t_end};
  sched.validate();
  return sched;
}

PulseSchedule PulseSchedule::around(std::vector<PulseParams> pulses, double half_width_durations) {
  if (pulses.empty()) {
    throw Error(ErrorCode::InvalidSchedule, "an empty schedule needs an explicit window");
  }
  const PulseParams& first = pulses.front();
  const PulseParams& last = pulses.back();
  const double t_start = first.center - half_width_durations * duration_from_bandwidth(first.bandwidth);
  const double t_end = last.center + half_width_durations * duration_from_bandwidth(last.bandwidth);
  return make(std::move(pulses), t_start, t_end);
}

void PulseSchedule::validate() const {
  if (!(std::isfinite(t_start) && std::isfinite(t_end) && t_end > t_start)) {
    throw Error(ErrorCode::InvalidSchedule, "window must satisfy t_start < t_end");
  }
  for (std::size_t i = 0; i < pulses.size(); ++i) {
    const PulseParams& p = pulses[i];
    const double margin = kWindowMargin / p.bandwidth;
    if (p.center - margin < t_start || p.center + margin > t_end) {
      throw Error(ErrorCode::InvalidSchedule,
                  "pulse " + std::to_string(i) + " is closer than 5/bandwidth to the window edge");
    }
    if (i > 0) {
      const PulseParams& prev = pulses[i - 1];
      if (!(p.center > prev.center)) {
        throw Error(ErrorCode::InvalidSchedule, "pulse centers must be strictly increasing");
      }
      if (p.center - prev.center < half_width(prev) + half_width(p)) {
        throw Error(ErrorCode::InvalidSchedule,
                    "pulses " + std::to_string(i - 1) + " and " + std::to_string(i) + " overlap");
      }
    }
  }
}

Trajectory integrate(const StateVector& psi0, const HamiltonianFn& h, double t0, double t1,
                     std::size_t steps, std::size_t stride) {
  if (steps == 0) throw Error(ErrorCode::InvalidParameter, "integrate needs at least one step");
  stride = std::max<std::size_t>(stride, 1);
  const double dt = (t1 - t0) / static_cast<double>(steps);

  Trajectory traj;
  const std::size_t expected = steps / stride + 2;
  traj.times.reserve(expected);
  traj.states.reserve(expected);
  traj.norms.reserve(expected);

  auto record = [&traj](double t, const StateVector& psi) {
    traj.times.push_back(t);
    traj.states.push_back(psi);
    traj.norms.push_back(psi.squaredNorm());
  };

  StateVector psi = psi0;
  record(t0, psi);
  Matrix3 h_left = h(t0);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    const double t_next = (k + 1 == steps) ? t1 : t + dt;
    const Matrix3 h_mid = h(t + 0.5 * dt);
    const Matrix3 h_right = h(t_next);
    psi = rk4_step(psi, h_left, h_mid, h_right, dt);
    h_left = h_right;
    if ((k + 1) % stride == 0 || k + 1 == steps) record(t_next, psi);
  }
  return traj;
}

Matrix3 schedule_hamiltonian(double t, const PulseSchedule& sched, const SystemParams& s) {
  Matrix3 h = free_hamiltonian(s);
  for (const PulseParams& p : sched.pulses) {
    const cplx coupling = pulse_coupling(t, p);
    h(kZ, kTau) += coupling;
    h(kTau, kZ) += std::conj(coupling);
  }
  return h;
}

double max_rate(const PulseSchedule& sched, const SystemParams& s) {
  double rate = s.omega_b;
  for (const PulseParams& p : sched.pulses) {
    rate = std::max({rate, p.rabi, std::abs(p.detuning)});
  }
  if (decays(s)) rate = std::max(rate, 0.5 / s.trion_lifetime);
  return rate;
}

double step_size(const PulseSchedule& sched, const SystemParams& s, const IntegratorOpts& opts) {
  const double rate = max_rate(sched, s);
  if (opts.dt < 0.0 || std::isnan(opts.dt)) {
    throw Error(ErrorCode::InvalidParameter, "dt must be positive");
  }
  if (opts.dt > 0.0) {
    if (opts.dt * rate >= kResolutionGuard) {
      throw Error(ErrorCode::StepTooLarge,
                  "dt * max(rabi, |detuning|, omega_B) = " + std::to_string(opts.dt * rate) +
                      " exceeds " + std::to_string(kResolutionGuard));
    }
    return opts.dt;
  }
  if (!(opts.resolution > 0.0 && opts.resolution < kResolutionGuard)) {
    throw Error(ErrorCode::StepTooLarge, "resolution must lie in (0, 0.1)");
  }
  const double span = sched.t_end - sched.t_start;
  if (rate == 0.0) return span / 1000.0;
  return std::min(opts.resolution / rate, span / 1000.0);
}

Trajectory propagate(const StateVector& psi0, const PulseSchedule& sched, const SystemParams& s,
                     const IntegratorOpts& opts) {
  s.validate();
  sched.validate();
  if (std::abs(psi0.squaredNorm() - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidParameter, "initial state must be normalized");
  }
  const double dt = step_size(sched, s, opts);
  const std::size_t steps = step_count(sched.t_end - sched.t_start, dt);

  Trajectory traj = integrate(
      psi0, [&](double t) { return schedule_hamiltonian(t, sched, s); }, sched.t_start,
      sched.t_end, steps, opts.sample_stride);
  traj.decay_enabled = decays(s);
  for (double n : traj.norms) {
    if (n > kNormLimit) {
      throw Error(ErrorCode::NormBlowup, "norm grew to " + std::to_string(n));
    }
  }
  return traj;
}

Matrix3 evolve_operator(const PulseSchedule& sched, const SystemParams& s,
                        const IntegratorOpts& opts) {
  s.validate();
  sched.validate();
  const double dt_target = step_size(sched, s, opts);
  const std::size_t steps = step_count(sched.t_end - sched.t_start, dt_target);
  const double dt = (sched.t_end - sched.t_start) / static_cast<double>(steps);

  // All three basis states advance together as the columns of U.
  Matrix3 u = Matrix3::Identity();
  Matrix3 h_left = schedule_hamiltonian(sched.t_start, sched, s);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = sched.t_start + static_cast<double>(k) * dt;
    const double t_next = (k + 1 == steps) ? sched.t_end : t + dt;
    const Matrix3 h_mid = schedule_hamiltonian(t + 0.5 * dt, sched, s);
    const Matrix3 h_right = schedule_hamiltonian(t_next, sched, s);
    u = rk4_step(u, h_left, h_mid, h_right, dt);
    h_left = h_right;
  }
  for (int col = 0; col < 3; ++col) {
    const double n = u.col(col).squaredNorm();
    if (n > kNormLimit) throw Error(ErrorCode::NormBlowup, "norm grew to " + std::to_string(n));
  }
  return u;
}

Matrix2 truncate_qubit(const Matrix3& u) { return u.topLeftCorner<2, 2>(); }

}  // namespace spinphase
