#include "spinphase/phases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "spinphase/error.hpp"
#include "spinphase/parallel.hpp"
#include "spinphase/special.hpp"

namespace spinphase {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kQuadratureTol = 1e-9;
constexpr int kPanels = 32;
constexpr int kMaxDepth = 48;

// log(1 + e^y) without overflow.
double softplus(double y) { return std::max(y, 0.0) + std::log1p(std::exp(-std::abs(y))); }

double lift_to_branch(double angle, double reference) {
  return angle + kTwoPi * std::round((reference - angle) / kTwoPi);
}

template <typename F>
double simpson_adaptive(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) {
    throw Error(ErrorCode::QuadratureFailure, "adaptive Simpson exceeded its depth limit");
  }
  return simpson_adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate_simpson(const F& f, double a, double b, double tol) {
  const double width = (b - a) / kPanels;
  double total = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const double lo = a + k * width;
    const double hi = (k + 1 == kPanels) ? b : lo + width;
    const double flo = f(lo);
    const double fhi = f(hi);
    const double fm = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
    total += simpson_adaptive(f, lo, hi, flo, fm, fhi, whole, tol / kPanels, kMaxDepth);
  }
  return total;
}

PhaseDecomposition make_decomposition(double phi, double alpha, PhaseMethod method, double ratio) {
  return PhaseDecomposition{phi, alpha, phi - alpha, method, ratio};
}

}  // namespace

std::string_view to_string(PhaseMethod m) noexcept {
  return m == PhaseMethod::AnalyticI ? "analytic" : "numeric";
}

double dynamic_phase_analytic(double rabi, double detuning, double window) {
  if (!(rabi > 0.0) || !std::isfinite(rabi)) {
    throw Error(ErrorCode::InvalidParameter, "rabi must be positive");
  }
  if (!(window >= 10.0)) {
    throw Error(ErrorCode::InvalidParameter, "quadrature window must be >= 10 / rabi");
  }
  // The bracket degenerates to 0 * (something finite) on resonance.
  if (detuning == 0.0) return 0.0;

  const double prefactor = rabi * rabi / (detuning * detuning + rabi * rabi);
  const double k = detuning / (2.0 * rabi);
  auto integrand = [&](double t) {
    const double x = rabi * t;
    const double th = std::tanh(x);
    const double sech = 1.0 / std::cosh(x);
    // 1 - tanh x = 2 / (1 + e^{2x}),  1 + tanh x = 2 / (1 + e^{-2x})
    const double log_minus = std::numbers::ln2 - softplus(2.0 * x);
    const double log_plus = std::numbers::ln2 - softplus(-2.0 * x);
    const cplx carrier = std::polar(1.0, -detuning * t);
    const cplx minus_factor = std::polar(1.0, -k * log_minus);  // (1 - tanh)^{-i detuning/2 rabi}
    const cplx plus_factor = std::polar(1.0, k * log_plus);     // (1 + tanh)^{ i detuning/2 rabi}
    const cplx term = carrier * minus_factor * plus_factor * cplx(detuning, -rabi * th);
    return prefactor * sech * sech * 2.0 * term.real();  // term + c.c.
  };
  const double half = window / rabi;
  return integrate_simpson(integrand, -half, half, kQuadratureTol);
}

DynamicPhaseTerms dynamic_phase_terms(const Trajectory& traj, const PulseSchedule& sched,
                                      const SystemParams& s) {
  if (traj.decay_enabled || (s.decay_enabled && std::isfinite(s.trion_lifetime))) {
    throw Error(ErrorCode::DecayForbidden,
                "phase decomposition is only defined for decay-free evolution");
  }
  if (traj.size() < 2) {
    throw Error(ErrorCode::InvalidParameter, "trajectory needs at least two samples");
  }
  auto energies = [&](std::size_t i) {
    const StateVector& psi = traj.states[i];
    cplx coupling(0.0, 0.0);
    for (const PulseParams& p : sched.pulses) coupling += pulse_coupling(traj.times[i], p);
    const double pulse = 2.0 * (std::conj(psi(kZ)) * coupling * psi(kTau)).real();
    const double precession = 2.0 * s.omega_b * (std::conj(psi(kZbar)) * psi(kZ)).real();
    return std::pair{pulse, precession};
  };

  DynamicPhaseTerms terms;
  auto prev = energies(0);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const auto cur = energies(i);
    const double dt = traj.times[i] - traj.times[i - 1];
    terms.pulse -= 0.5 * dt * (prev.first + cur.first);
    terms.precession -= 0.5 * dt * (prev.second + cur.second);
    prev = cur;
  }
  return terms;
}

double dynamic_phase_numeric(const Trajectory& traj, const PulseSchedule& sched,
                             const SystemParams& s) {
  return dynamic_phase_terms(traj, sched, s).total();
}

PhaseDecomposition decompose(double rabi, double detuning, PhaseMethod method,
                             const SystemParams& s, const PhaseOptions& opts) {
  const PulseParams pulse = two_pi_pulse(rabi, detuning, 0.0);
  const double ratio = pulse.ratio();
  const double reference = overall_phase(rabi, detuning);

  if (method == PhaseMethod::AnalyticI) {
    return make_decomposition(reference, dynamic_phase_analytic(rabi, detuning, opts.analytic_window),
                              method, ratio);
  }

  if (s.decay_enabled && std::isfinite(s.trion_lifetime)) {
    throw Error(ErrorCode::DecayForbidden,
                "phase decomposition is only defined for decay-free evolution");
  }
  const PulseSchedule sched = PulseSchedule::around({pulse}, opts.numeric_half_window);
  const Trajectory traj = propagate(basis_state(kZ), sched, s, opts.integrator);
  const double phi = lift_to_branch(std::arg(traj.final_state()(kZ)), reference);
  return make_decomposition(phi, dynamic_phase_numeric(traj, sched, s), method, ratio);
}

std::vector<PhaseDecomposition> sweep_ratio(std::span<const double> ratios, PhaseMethod method,
                                            const SystemParams& s, double rabi,
                                            const PhaseOptions& opts) {
  for (double r : ratios) {
    if (!std::isfinite(r) || r == 0.0) {
      throw Error(ErrorCode::InvalidParameter, "sweep ratios must be finite and nonzero");
    }
  }
  std::vector<PhaseDecomposition> rows = detail::parallel_map(ratios.size(), [&](std::size_t i) {
    PhaseDecomposition d = decompose(rabi, rabi / ratios[i], method, s, opts);
    d.ratio = ratios[i];
    return d;
  });
  if (method == PhaseMethod::AnalyticI) return rows;

  // Unwrap outward from the smallest |r| on each sign.
  for (int sign : {1, -1}) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      if ((ratios[i] > 0.0) == (sign > 0)) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(ratios[a]) < std::abs(ratios[b]);
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
      PhaseDecomposition& row = rows[order[k]];
      row.overall = lift_to_branch(row.overall, rows[order[k - 1]].overall);
      row.geometric = row.overall - row.dynamic;
    }
  }
  return rows;
}

}  // namespace spinphase
