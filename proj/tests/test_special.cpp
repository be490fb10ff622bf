#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "spinphase/error.hpp"
#include "spinphase/propagator.hpp"
#include "spinphase/special.hpp"

using namespace spinphase;

namespace {

using lcplx = std::complex<long double>;

// Plain power series in long double.
lcplx series_ld(lcplx a, lcplx b, lcplx c, long double z, int terms) {
  lcplx term = 1.0L;
  lcplx sum = 1.0L;
  for (int n = 0; n < terms; ++n) {
    const long double k = n;
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0L)) * z;
    sum += term;
  }
  return sum;
}

struct Frozen {
  cplx a, b, c;
  double z;
  cplx value;
};

// tests/oracles/hyp2f1_mpmath.py, 40 digits.
const std::array<Frozen, 7> kMpmath = {{
    {{0.5, 0}, {-0.5, 0}, {0.5, 0.3}, 0.7, {0.68418639330042325216, 0.21630093733531983495}},
    {{1.0, 0}, {-1.0, 0}, {0.5, 1.2}, 0.95, {0.71893491124260354571, 0.67455621301775146533}},
    {{1.0, 0}, {-1.0, 0}, {0.5, -0.25}, 0.3, {0.52000000000000001776, -0.23999999999999999112}},
    {{0.8, 0}, {-0.8, 0}, {0.5, 0.9}, 0.99, {0.7706873680788089777, 0.63651708391810684433}},
    {{1.3, 0.4}, {0.2, -0.7}, {2.1, 0.5}, 0.6, {1.045544029839220632, -0.38734429548874807264}},
    {{1.5, 0}, {0.5, 0}, {1.5, 2.0}, 0.999, {1.4205808770171802648, -0.3170608834071979}},
    {{0.7, 0.5}, {-0.7, 0.5}, {1.5, 0.5}, 0.85, {0.56810053595057212271, 0.038780468590302876143}},
}};

}  // namespace

TEST_CASE("hyp2f1 terminating case") {
  for (double z : {0.0, 0.1, 0.5, 0.73, 0.99, 1.0}) {
    for (cplx c : {cplx(0.5, 0.3), cplx(0.5, -2.0), cplx(1.7, 0.0)}) {
      const cplx v = hyp2f1({1.0, -1.0, c, z});
      CHECK(std::abs(v - (1.0 - z / c)) < 1e-14);
    }
  }
}

TEST_CASE("hyp2f1 against long double series") {
  const lcplx ref = series_ld({0.5L, 0.0L}, {-0.5L, 0.0L}, {0.5L, 0.3L}, 0.7L, 200);
  const cplx v = hyp2f1({0.5, -0.5, {0.5, 0.3}, 0.7});
  CHECK(std::abs(v - cplx(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))) < 1e-10);
}

TEST_CASE("hyp2f1 against frozen mpmath values") {
  for (const Frozen& f : kMpmath) {
    CAPTURE(f.z);
    const cplx v = hyp2f1({f.a, f.b, f.c, f.z});
    CHECK(std::abs(v - f.value) < 1e-11 * std::max(1.0, std::abs(f.value)));
  }
}

TEST_CASE("hyp2f1 Euler transformation") {
  // F(a,b;c;z) = (1-z)^{c-a-b} F(c-a, c-b; c; z)
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> zd(0.0, 0.9);
  for (int i = 0; i < 50; ++i) {
    const cplx a(u(rng), u(rng));
    const cplx b(u(rng), u(rng));
    const cplx c(1.2 + u(rng), u(rng));
    const double z = zd(rng);
    const cplx lhs = hyp2f1({a, b, c, z});
    const cplx rhs = std::pow(1.0 - z, c - a - b) * hyp2f1({c - a, c - b, c, z});
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("hyp2f1 errors") {
  CHECK_THROWS_AS(hyp2f1({1.0, 1.0, -2.0, 0.3}), Error);
  try {
    hyp2f1({1.0, 1.0, 0.0, 0.3});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidC);
  }
  CHECK_THROWS_AS(hyp2f1({1.0, 1.0, 2.0, 1.5}), Error);
}

TEST_CASE("log_gamma") {
  CHECK(std::abs(std::exp(log_gamma(5.0)) - 24.0) < 1e-11);
  CHECK(std::abs(std::exp(log_gamma(0.5)) - std::sqrt(std::numbers::pi)) < 1e-13);
  // Reflection region and recurrence Gamma(z+1) = z Gamma(z).
  for (cplx z : {cplx(-0.3, 0.7), cplx(0.2, -3.0), cplx(2.5, 10.0)}) {
    const cplx ratio = std::exp(log_gamma(z + 1.0) - log_gamma(z));
    CHECK(std::abs(ratio - z) < 1e-11 * std::abs(z));
  }
}

TEST_CASE("rz_state basics") {
  const double eta = 1.7559438625664223;
  for (double r : {0.1, 1.0, 10.0, -2.0}) {
    const PulseParams p = two_pi_pulse(eta, eta / r, 0.0);
    for (double t : {-20.0, -1.0, 0.0, 0.4, 3.0, 20.0}) {
      const StateVector psi = rz_state(t, p);
      CHECK(psi(kZbar) == cplx(0.0, 0.0));
      CHECK(std::abs(psi.squaredNorm() - 1.0) < 1e-10);
    }
    const StateVector early = rz_state(-30.0, p);
    CHECK(std::abs(early(kZ) - 1.0) < 1e-12);
    const StateVector late = rz_state(30.0, p);
    CHECK(std::abs(std::arg(late(kZ)) - overall_phase(eta, eta / r)) < 1e-9);
  }
}

TEST_CASE("rz_state collapses to elementary form") {
  // a = 1: C_z = 1 - z/c, C_tau = -(i/c) z^c (1-z)^{1-c}
  const double eta = 1.3;
  const PulseParams p = two_pi_pulse(eta, 0.8, 0.0);
  const cplx c(0.5, 0.5 * 0.8 / eta);
  for (double t : {-3.0, -0.5, 0.0, 0.7, 2.5}) {
    const double z = 0.5 * (1.0 + std::tanh(eta * t));
    const StateVector psi = rz_state(t, p);
    CHECK(std::abs(psi(kZ) - (1.0 - z / c)) < 1e-12);
    const cplx tau = cplx(0.0, -1.0) / c * std::pow(cplx(z), c) * std::pow(cplx(1.0 - z), 1.0 - c);
    CHECK(std::abs(psi(kTau) - tau) < 1e-12);
  }
}

TEST_CASE("rz_state agrees with direct propagation") {
  const double eta = 1.7559438625664223;
  const SystemParams s = SystemParams::closed(0.0);
  for (double r : {0.3, 1.0, 4.0}) {
    const PulseParams p = two_pi_pulse(eta, eta / r, 0.0);
    const PulseSchedule sched = PulseSchedule::make({p}, -30.0, 30.0);
    const StateVector psi0 = rz_state(-30.0, p);
    const Trajectory traj = propagate(psi0 / psi0.norm(), sched, s, {.dt = 0.0005});
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); i += 97) {
      worst = std::max(worst, (traj.states[i] - rz_state(traj.times[i], p)).cwiseAbs().maxCoeff());
    }
    CAPTURE(r);
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("overall_phase") {
  CHECK(overall_phase(1.0, 0.0) == doctest::Approx(std::numbers::pi));
  CHECK(overall_phase(1.0, 1.0) == doctest::Approx(std::numbers::pi / 2));
  for (double d : {0.01, 0.5, 3.0, 100.0}) {
    CHECK(overall_phase(1.0, -d) == -overall_phase(1.0, d));
  }
}
