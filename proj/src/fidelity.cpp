#include "spinphase/fidelity.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

#include "spinphase/error.hpp"
#include "spinphase/parallel.hpp"
#include "spinphase/special.hpp"

namespace spinphase {

namespace {

constexpr double kPi = std::numbers::pi;
// Beyond this the second pulse's detuning makes the fixed-step propagation
// impractically long while its rotation angle is already below 2e-3 rad.
constexpr double kMaxDesignRatio = 1e3;

SystemParams environment(double field_tesla, const GateParams& params) {
  const double omega_b = larmor_from_field(field_tesla, params.g);
  if (std::isfinite(params.trion_lifetime)) {
    return SystemParams::with_decay(omega_b, params.trion_lifetime);
  }
  return SystemParams::closed(omega_b);
}

}  // namespace

std::string_view to_string(IdealConvention c) noexcept {
  return c == IdealConvention::Interleaved ? "interleaved" : "bare";
}

Matrix2 ideal_rotation(double gamma) {
  Matrix2 r = Matrix2::Zero();
  r(0, 0) = 1.0;
  r(1, 1) = std::polar(1.0, gamma);
  return r;
}

Matrix2 free_precession(double omega_b, double dt) {
  const double theta = omega_b * dt;
  Matrix2 p;
  p << cplx(std::cos(theta), 0.0), cplx(0.0, -std::sin(theta)),  //
      cplx(0.0, -std::sin(theta)), cplx(std::cos(theta), 0.0);
  return p;
}

double average_fidelity(const Matrix2& u, const Matrix2& u_ideal) {
  if ((u_ideal.adjoint() * u_ideal - Matrix2::Identity()).norm() > 1e-9) {
    throw Error(ErrorCode::InvalidParameter, "ideal operator is not unitary");
  }
  const Eigen::JacobiSVD<Matrix2> svd(u);
  if (svd.singularValues()(0) > 1.0 + 1e-6) {
    throw Error(ErrorCode::NonContraction, "actual operator has a singular value above 1");
  }
  const Matrix2 overlap = u.adjoint() * u_ideal;
  cplx sum(0.0, 0.0);
  for (int i = 0; i < 2; ++i) sum += std::norm(overlap(i, i)) / 3.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (i == j) continue;
      sum += (std::norm(overlap(i, j)) + overlap(i, i) * std::conj(overlap(j, j))) / 6.0;
    }
  }
  assert(std::abs(sum.imag()) < 1e-12);
  return sum.real();
}

GateReport gate_report(double gamma, double field_tesla, const GateParams& params) {
  if (!(std::abs(gamma) <= kPi)) {
    throw Error(ErrorCode::OutOfRange, "|gamma| must not exceed pi");
  }
  const double bandwidth = bandwidth_from_duration(params.pulse_duration);
  const SystemParams s = environment(field_tesla, params);

  std::vector<PulseParams> pulses;
  std::vector<double> angles;
  if (std::abs(gamma) == kPi) {
    pulses.push_back(two_pi_pulse(bandwidth, 0.0, 0.0));
    angles.push_back(kPi);
  } else {
    const double spacing = params.spacing.value_or(14.0 * params.pulse_duration);
    const CancelingPair pair = design_for_angle(gamma, bandwidth, spacing, params.branch);
    if (std::abs(pair.r1) > kMaxDesignRatio) {
      throw Error(ErrorCode::OutOfRange,
                  "gamma too close to +-pi for a two-pulse design; use a single resonant pulse");
    }
    pulses = {pair.first, pair.second};
    for (const PulseParams& p : pulses) angles.push_back(overall_phase(p.rabi, p.detuning));
  }

  const PulseSchedule sched = PulseSchedule::around(pulses, params.window_durations);
  const Matrix3 u3 = evolve_operator(sched, s, params.integrator);

  Matrix2 ideal;
  if (params.ideal == IdealConvention::Bare) {
    double total = 0.0;
    for (double a : angles) total += a;
    ideal = ideal_rotation(total);
  } else {
    ideal = Matrix2::Identity();
    double t = sched.t_start;
    for (std::size_t k = 0; k < pulses.size(); ++k) {
      ideal = ideal_rotation(angles[k]) * free_precession(s.omega_b, pulses[k].center - t) * ideal;
      t = pulses[k].center;
    }
    ideal = free_precession(s.omega_b, sched.t_end - t) * ideal;
  }

  GateReport report;
  report.actual = truncate_qubit(u3);
  report.ideal = ideal;
  report.fidelity = average_fidelity(report.actual, ideal);
  report.residual_population = 1.0 - u3.col(kZ).squaredNorm();
  report.field = field_tesla;
  report.gamma = gamma;
  return report;
}

std::vector<GateReport> fidelity_sweep(std::span<const double> gammas,
                                       std::span<const double> fields, const GateParams& params) {
  if (gammas.empty() || fields.empty()) {
    throw Error(ErrorCode::InvalidParameter, "fidelity sweep needs nonempty grids");
  }
  const std::size_t n = gammas.size();
  return detail::parallel_map(n * fields.size(), [&](std::size_t idx) {
    return gate_report(gammas[idx % n], fields[idx / n], params);
  });
}

std::vector<PopulationPoint> population_sweep(std::span<const double> gammas, double field_tesla,
                                              const GateParams& params) {
  if (gammas.empty()) throw Error(ErrorCode::InvalidParameter, "population sweep needs angles");
  return detail::parallel_map(gammas.size(), [&](std::size_t i) {
    const GateReport r = gate_report(gammas[i], field_tesla, params);
    return PopulationPoint{r.gamma, r.residual_population};
  });
}

}  // namespace spinphase
