#include "spinphase/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "spinphase/error.hpp"

namespace spinphase {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesEps = 1e-16;
constexpr std::size_t kMaxTerms = 1'000'000;

bool is_nonpositive_integer(cplx x) {
  return x.imag() == 0.0 && x.real() <= 0.0 && x.real() == std::round(x.real());
}

bool is_integer(cplx x) { return x.imag() == 0.0 && x.real() == std::round(x.real()); }

// log(sin(pi z)) without overflow for large |Im z|. Integer shifts of Re z
// only change the result by i*pi*n.
cplx log_sin_pi(cplx z) {
  const double n = std::round(z.real());
  const cplx w = kPi * cplx(z.real() - n, z.imag());
  const bool lower = w.imag() < 0.0;
  const cplx v = lower ? std::conj(w) : w;
  // sin(v) = exp(-i v) (exp(2 i v) - 1) / (2 i), |exp(2 i v)| <= 1.
  const cplx i(0.0, 1.0);
  cplx result = -i * v + std::log((std::exp(2.0 * i * v) - 1.0) / (2.0 * i));
  if (lower) result = std::conj(result);
  return result + i * (kPi * n);
}

// Stirling series after shifting Re z >= 15.
cplx log_gamma_right(cplx z) {
  static constexpr std::array<double, 8> kBernoulliTerms = {
      1.0 / 12.0,          -1.0 / 360.0,        1.0 / 1260.0,       -1.0 / 1680.0,
      1.0 / 1188.0,        -691.0 / 360360.0,   1.0 / 156.0,        -3617.0 / 122400.0,
  };
  cplx shift_log(0.0, 0.0);
  cplx w = z;
  while (w.real() < 15.0) {
    shift_log += std::log(w);
    w += 1.0;
  }
  const cplx inv = 1.0 / w;
  const cplx inv2 = inv * inv;
  cplx series(0.0, 0.0);
  cplx power = inv;
  for (double coeff : kBernoulliTerms) {
    series += coeff * power;
    power *= inv2;
  }
  return (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi) + series - shift_log;
}

cplx series(cplx a, cplx b, cplx c, double z) {
  cplx sum(1.0, 0.0);
  cplx term(1.0, 0.0);
  if (z == 0.0) return sum;
  int small_run = 0;
  for (std::size_t n = 0; n < kMaxTerms; ++n) {
    const double nd = static_cast<double>(n);
    term *= (a + nd) * (b + nd) / ((c + nd) * (nd + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;  // terminating series
    if (std::abs(term) <= kSeriesEps * std::abs(sum)) {
      if (++small_run >= 2) return sum;
    } else {
      small_run = 0;
    }
  }
  throw Error(ErrorCode::NonConvergence, "hypergeometric series did not converge in 1e6 terms");
}

// exp(sum(log Gamma(num)) - sum(log Gamma(den))); zero if any denominator
// argument sits on a pole of Gamma.
cplx gamma_ratio(std::initializer_list<cplx> num, std::initializer_list<cplx> den) {
  for (cplx d : den) {
    if (is_nonpositive_integer(d)) return {0.0, 0.0};
  }
  cplx acc(0.0, 0.0);
  for (cplx x : num) acc += log_gamma(x);
  for (cplx x : den) acc -= log_gamma(x);
  return std::exp(acc);
}

}  // namespace

cplx log_gamma(cplx z) {
  if (is_nonpositive_integer(z)) {
    throw Error(ErrorCode::InvalidParameter, "log_gamma evaluated at a pole");
  }
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    return std::log(kPi) - log_sin_pi(z) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

cplx hyp2f1(const HypParams& h) { return hyp2f1(h.a, h.b, h.c, h.z, 1.0 - h.z); }

cplx hyp2f1(cplx a, cplx b, cplx c, double z, double one_minus_z) {
  if (is_nonpositive_integer(c)) {
    throw Error(ErrorCode::InvalidC, "c is a non-positive integer");
  }
  if (!(z >= 0.0 && z <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "hyp2f1 argument z must lie in [0, 1]");
  }
  const bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  if (z <= 0.5 || terminating) return series(a, b, c, z);

  const cplx s = c - a - b;
  if (is_integer(s)) {
    if (one_minus_z == 0.0) {
      if (s.real() <= 0.0) {
        throw Error(ErrorCode::NonConvergence, "2F1 diverges at z = 1 for Re(c - a - b) <= 0");
      }
      return gamma_ratio({c, s}, {c - a, c - b});
    }
    return series(a, b, c, z);
  }

  const cplx first_coeff = gamma_ratio({c, s}, {c - a, c - b});
  cplx result(0.0, 0.0);
  if (first_coeff != 0.0) {
    result += first_coeff * series(a, b, 1.0 - s, one_minus_z);
  }
  if (one_minus_z == 0.0) {
    if (s.real() <= 0.0) {
      throw Error(ErrorCode::NonConvergence, "2F1 diverges at z = 1 for Re(c - a - b) <= 0");
    }
    return result;
  }
  const cplx second_coeff = gamma_ratio({c, -s}, {a, b});
  if (second_coeff != 0.0) {
    result += second_coeff * std::exp(s * std::log(one_minus_z)) *
              series(c - a, c - b, 1.0 + s, one_minus_z);
  }
  return result;
}

StateVector rz_state(double t, const PulseParams& p) {
  const double x = p.bandwidth * (t - p.center);
  // z = (1 + tanh x)/2 = 1/(1 + e^{-2x}); both z and 1 - z kept accurate.
  const double z = 1.0 / (1.0 + std::exp(-2.0 * x));
  const double one_minus_z = 1.0 / (1.0 + std::exp(2.0 * x));
  const double log_z = -std::log1p(std::exp(-2.0 * x));

  const cplx i(0.0, 1.0);
  const cplx a(p.rabi / p.bandwidth, 0.0);
  const cplx c = 0.5 * (1.0 + i * (p.detuning / p.bandwidth));

  StateVector psi = StateVector::Zero();
  psi(kZ) = hyp2f1(a, -a, c, z, one_minus_z);
  if (z > 0.0 && std::isfinite(log_z)) {
    const cplx z_pow_c = std::exp(c * log_z);
    psi(kTau) = -(i * a / c) * z_pow_c * hyp2f1(a + c, -a + c, 1.0 + c, z, one_minus_z);
  }
  return psi;
}

double overall_phase(double rabi, double detuning) {
  if (!(rabi > 0.0)) throw Error(ErrorCode::InvalidParameter, "rabi must be positive");
  if (detuning == 0.0) return kPi;
  return 2.0 * std::atan(rabi / detuning);
}

}  // namespace spinphase
