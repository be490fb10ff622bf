#pragma once

// Gauss hypergeometric function for complex parameters on 0 <= z <= 1 and
// the closed-form Rosen-Zener state of a sech pulse in the two-level
// subspace {|z>, |tau>}.

#include "spinphase/model.hpp"

namespace spinphase {

struct HypParams {
  cplx a;
  cplx b;
  cplx c;
  double z = 0.0;  // [0, 1]
};

/// 2F1(a, b; c; z) to ~1e-12 relative accuracy.
///
/// z <= 0.5 sums the power series directly; z > 0.5 uses the z -> 1 - z
/// connection formula when c - a - b is not an integer and falls back to the
/// direct series otherwise. Throws Error(InvalidC) when c is a non-positive
/// integer, Error(NonConvergence) when the series needs more than 1e6 terms,
/// Error(InvalidParameter) for z outside [0, 1].
cplx hyp2f1(const HypParams& h);

/// Same, with 1 - z supplied separately so callers that know it accurately
/// (z close to 1) do not lose digits to cancellation.
cplx hyp2f1(cplx a, cplx b, cplx c, double z, double one_minus_z);

/// Log Gamma for complex argument. Only exp() of the result is meaningful;
/// the imaginary part may differ from the principal branch by multiples of
/// 2*pi.
cplx log_gamma(cplx z);

/// Analytic Rosen-Zener state for a pulse starting from |z> at
/// t -> -inf, neglecting precession: C_zbar is identically zero,
///   C_z   = F(a, -a; c; z)
///   C_tau = -(i a / c) z^c F(a + c, -a + c; 1 + c; z)
/// with a = rabi/bandwidth, c = (1 + i detuning/bandwidth)/2 and
/// z = (1 + tanh(bandwidth (t - center)))/2.
StateVector rz_state(double t, const PulseParams& p);

/// Rotation angle 2 arctan(rabi/detuning) acquired by |z> after a 2*pi
/// pulse. Lies in (0, pi] for detuning >= 0 and in (-pi, 0) for detuning < 0;
/// resonance returns +pi.
double overall_phase(double rabi, double detuning);

}  // namespace spinphase
