#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "spinphase/error.hpp"
#include "spinphase/phases.hpp"

using namespace spinphase;

namespace {

const double kEta = bandwidth_from_duration(1.5);

// Closed form of the analytic dynamic-phase integral for a 2*pi pulse.
double alpha_closed(double r) { return 4.0 * r / (1.0 + r * r); }

}  // namespace

TEST_CASE("analytic dynamic phase matches closed form") {
  for (double r : {0.01, 0.1, 0.35, 0.58, 1.0, 1.39, 3.0, 10.0, 100.0}) {
    CAPTURE(r);
    CHECK(std::abs(dynamic_phase_analytic(kEta, kEta / r) - alpha_closed(r)) < 1e-9);
    CHECK(std::abs(dynamic_phase_analytic(kEta, -kEta / r) + alpha_closed(r)) < 1e-9);
  }
  CHECK(dynamic_phase_analytic(kEta, 0.0) == 0.0);
  CHECK(std::abs(dynamic_phase_analytic(0.5, 0.5) - 2.0) < 1e-9);
}

TEST_CASE("analytic dynamic phase arguments") {
  CHECK_THROWS_AS(dynamic_phase_analytic(kEta, 1.0, 5.0), Error);
  CHECK_THROWS_AS(dynamic_phase_analytic(0.0, 1.0), Error);
}

TEST_CASE("decomposition landmarks, method I") {
  const SystemParams s = SystemParams::closed(0.0);
  const double rmin = 1.0 / std::sqrt(3.0);
  const PhaseDecomposition at_min = decompose(kEta, kEta / rmin, PhaseMethod::AnalyticI, s);
  CHECK(at_min.overall == doctest::Approx(std::numbers::pi / 3));
  CHECK(at_min.geometric == doctest::Approx(2 * std::atan(rmin) - std::sqrt(3.0)).epsilon(1e-9));
  // Neighbours are higher.
  for (double r : {rmin * 0.98, rmin * 1.02}) {
    CHECK(decompose(kEta, kEta / r, PhaseMethod::AnalyticI, s).geometric > at_min.geometric);
  }
  const PhaseDecomposition below = decompose(kEta, kEta / 1.38, PhaseMethod::AnalyticI, s);
  const PhaseDecomposition above = decompose(kEta, kEta / 1.40, PhaseMethod::AnalyticI, s);
  CHECK(below.geometric < 0.0);
  CHECK(above.geometric > 0.0);
}

TEST_CASE("resonance is purely geometric") {
  for (PhaseMethod m : {PhaseMethod::AnalyticI, PhaseMethod::NumericII}) {
    const PhaseDecomposition d = decompose(kEta, 0.0, m, SystemParams::closed(0.0));
    CHECK(d.overall == doctest::Approx(std::numbers::pi).epsilon(1e-9));
    CHECK(std::abs(d.dynamic) < 1e-6);
    CHECK(d.geometric == doctest::Approx(std::numbers::pi).epsilon(1e-6));
  }
}

TEST_CASE("sweep symmetry") {
  const std::vector<double> ratios = {0.1, 0.5, 2.0, 10.0, -0.1, -0.5, -2.0, -10.0};
  const SystemParams s = SystemParams::closed(0.0);
  const auto rows = sweep_ratio(ratios, PhaseMethod::AnalyticI, s, kEta);
  REQUIRE(rows.size() == ratios.size());
  CHECK(std::abs(rows[0].dynamic - rows[3].dynamic) < 1e-9);
  CHECK(std::abs(rows[1].dynamic - rows[2].dynamic) < 1e-9);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(rows[i].ratio == ratios[i]);
    CHECK(std::abs(rows[i].overall + rows[i + 4].overall) < 1e-12);
    CHECK(std::abs(rows[i].dynamic + rows[i + 4].dynamic) < 1e-12);
    CHECK(std::abs(rows[i].geometric + rows[i + 4].geometric) < 1e-12);
  }
}

TEST_CASE("numeric sweep stays on a continuous branch") {
  const std::vector<double> ratios = {0.05, 1.0, 5.0, 50.0, -0.05, -1.0, -50.0};
  const auto rows = sweep_ratio(ratios, PhaseMethod::NumericII, SystemParams::closed(0.0), kEta);
  for (const auto& d : rows) {
    CAPTURE(d.ratio);
    CHECK(std::abs(d.overall - 2.0 * std::atan(d.ratio)) < 1e-4);
  }
}

TEST_CASE("methods agree without precession") {
  const SystemParams s = SystemParams::closed(0.0);
  for (double r : {0.1, 1.0, 10.0}) {
    const auto a = decompose(kEta, kEta / r, PhaseMethod::AnalyticI, s);
    const auto n = decompose(kEta, kEta / r, PhaseMethod::NumericII, s);
    CAPTURE(r);
    CHECK(std::abs(a.overall - n.overall) < 1e-4);
    CHECK(std::abs(a.dynamic - n.dynamic) < 1e-3);
  }
}

TEST_CASE("precession splits the numeric dynamic phase") {
  // Without precession the pulse term alone is the whole dynamic phase.
  const SystemParams off = SystemParams::closed(0.0);
  const SystemParams on = SystemParams::closed(larmor_from_field(0.29));
  const PulseSchedule sched = PulseSchedule::around({two_pi_pulse(kEta, kEta)});
  const auto t_off = dynamic_phase_terms(propagate(basis_state(kZ), sched, off), sched, off);
  const auto t_on = dynamic_phase_terms(propagate(basis_state(kZ), sched, on), sched, on);
  CHECK(t_off.precession == 0.0);
  CHECK(std::abs(t_off.pulse - 2.0) < 1e-3);
  // Leakage into |zbar> lowers the pulse term; the omega_B cross term is positive.
  CHECK(t_on.pulse < t_off.pulse);
  CHECK(t_on.precession > 0.0);
  CHECK(t_on.total() == doctest::Approx(dynamic_phase_numeric(propagate(basis_state(kZ), sched, on), sched, on)));
}

TEST_CASE("numeric dynamic phase refuses decay") {
  const SystemParams s = SystemParams::with_decay(0.0, 900.0);
  const PulseSchedule sched = PulseSchedule::around({two_pi_pulse(kEta, kEta)});
  const Trajectory traj = propagate(basis_state(kZ), sched, s);
  try {
    dynamic_phase_terms(traj, sched, s);
    FAIL("expected DecayForbidden");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DecayForbidden);
  }
}
