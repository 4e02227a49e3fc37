#pragma once

// Analytic line-center observables of a signal/idler pair with effective
// detuning delta (rad/s) at normalized pump x = P_in / P_th.  Detunings of an
// asymmetric pair use the drift-matrix convention: delta_s = delta_i is the
// energy-conserving symmetric case.

#include <cmath>
#include <complex>
#include <utility>

#include "qfc/constants.hpp"
#include "qfc/core_model.hpp"
#include "qfc/errors.hpp"
#include "qfc/moments.hpp"
#include "qfc/units.hpp"

namespace qfc
{
struct SqueezeResult
{
    double v_s = 1.0;  // squeezed quadrature variance / vacuum variance
    double v_as = 1.0; // anti-squeezed
    double phi_opt = 0.0;
    double v_s_db = 0.0;
    double v_as_db = 0.0;
};

namespace detail
{
// Gamma^2 (1 - x^2) without the cancellation of 1 - x*x near x = 1.
inline double below_threshold_gap(double big_gamma, double x) { return big_gamma * big_gamma * (1.0 - x) * (1.0 + x); }

// 4 Delta^2 + Gamma^2 (1 - x^2)
inline double symmetric_denominator(double big_gamma, double x, double delta)
{
    return 4.0 * delta * delta + below_threshold_gap(big_gamma, x);
}

// (4 Ds Di + Gamma^2 (1 - x^2))^2 + 4 Gamma^2 (Ds - Di)^2, i.e. 16 |det| of the
// signal/idler response block.  Reduces to symmetric_denominator^2 when Ds = Di.
inline double pair_denominator(double big_gamma, double x, double delta_s, double delta_i)
{
    const double real = 4.0 * delta_s * delta_i + below_threshold_gap(big_gamma, x);
    const double split = 2.0 * big_gamma * (delta_s - delta_i);
    return real * real + split * split;
}
} // namespace detail

// <b_s^dag b_s> = 4 Gamma^3 kappa eta x^2 / (4 Delta^2 + Gamma^2 (1 - x^2))^2
inline double photon_number(const ResonatorParams &p, PumpRatio x, double delta)
{
    const double big_gamma = p.total_loss();
    const double xv = x.value();
    const double den = detail::symmetric_denominator(big_gamma, xv, delta);
    return 4.0 * big_gamma * big_gamma * big_gamma * p.kappa * p.eta * xv * xv / (den * den);
}

// <b_s b_i> = 2 kappa Gamma eta x (Gamma^2 x^2 - (2 Delta + i Gamma)^2) / (...)^2
inline std::complex<double> pair_moment(const ResonatorParams &p, PumpRatio x, double delta)
{
    using namespace std::complex_literals;
    const double big_gamma = p.total_loss();
    const double xv = x.value();
    const double den = detail::symmetric_denominator(big_gamma, xv, delta);
    const std::complex<double> detuned = 2.0 * delta + 1i * big_gamma;
    const std::complex<double> num = big_gamma * big_gamma * xv * xv - detuned * detuned;
    return 2.0 * p.kappa * big_gamma * p.eta * xv * num / (den * den);
}

// Moments of an asymmetrically detuned pair.  n_s = n_i always holds at line
// center; the pair moment picks up the mean detuning.
inline QuantumMoments pair_moments(const ResonatorParams &p, PumpRatio x, double delta_s, double delta_i)
{
    using namespace std::complex_literals;
    const double big_gamma = p.total_loss();
    const double sigma = big_gamma * x.value();
    const double den = detail::pair_denominator(big_gamma, x.value(), delta_s, delta_i);

    const double n = 4.0 * p.eta * p.kappa * big_gamma * sigma * sigma / den;
    const std::complex<double> num =
        big_gamma * big_gamma + sigma * sigma - 4.0 * delta_s * delta_i - 2i * big_gamma * (delta_s + delta_i);
    return {n, n, 2.0 * p.eta * p.kappa * sigma * num / den};
}

// Two-mode quadrature variance relative to vacuum at local-oscillator phase phi.
inline double variance(const ResonatorParams &p, PumpRatio x, double delta, double phi_lo)
{
    using namespace std::complex_literals;
    const double n = photon_number(p, x, delta);
    const std::complex<double> m = pair_moment(p, x, delta);
    return 2.0 * (m * std::exp(2i * phi_lo)).real() + 2.0 * n + 1.0;
}

// Local-oscillator phase that minimizes variance(); the anti-squeezed
// quadrature sits pi/2 away.  The branch switches where
// 4 Delta^2 - Gamma^2 - sigma^2 changes sign, which is also the zero of the
// atan denominator.
inline double optimal_angle(const ResonatorParams &p, PumpRatio x, double delta)
{
    const double big_gamma = p.total_loss();
    const double sigma = big_gamma * x.value();
    const double den = 4.0 * delta * delta - big_gamma * big_gamma - sigma * sigma;
    const double base = -0.5 * std::atan(4.0 * delta * big_gamma / den);
    return den > 0.0 ? base : base + constants::pi / 2.0;
}

// V_s = 1 + 2n - 2|m| cancels badly near threshold, so it is taken from the
// product V_s V_as = 1 + 16 Gamma^2 eta kappa (Gamma - eta kappa) x^2 / den^2,
// which is exactly 1 for a lossless, perfectly collected pair.
inline SqueezeResult squeeze(const ResonatorParams &p, PumpRatio x, double delta)
{
    const double n = photon_number(p, x, delta);
    const double m = std::abs(pair_moment(p, x, delta));
    const double big_gamma = p.total_loss();
    const double xv = x.value();
    const double den = detail::symmetric_denominator(big_gamma, xv, delta);
    const double excess_loss = p.gamma + (1.0 - p.eta) * p.kappa; // Gamma - eta kappa
    const double product =
        1.0 + 16.0 * big_gamma * big_gamma * p.eta * p.kappa * excess_loss * xv * xv / (den * den);
    SqueezeResult r;
    r.v_as = 1.0 + 2.0 * n + 2.0 * m;
    r.v_s = product / r.v_as;
    r.phi_opt = optimal_angle(p, x, delta);
    r.v_s_db = to_db(r.v_s);
    r.v_as_db = to_db(r.v_as);
    return r;
}

// Line-center (Delta = 0) squeezing and anti-squeezing:
//   1 -/+ (4 kappa eta / Gamma) x / (1 +/- x)^2
// V_s -> 1 - eta kappa / Gamma and V_as -> infinity as x -> 1.
inline std::pair<double, double> squeeze_limits(const ResonatorParams &p, PumpRatio x)
{
    const double strength = 4.0 * p.kappa * p.eta / p.total_loss();
    const double xv = x.value();
    return {1.0 - strength * xv / ((1.0 + xv) * (1.0 + xv)), 1.0 + strength * xv / ((1.0 - xv) * (1.0 - xv))};
}

// Each of signal and idler alone is thermal.
inline constexpr double g2_single() { return 2.0; }

// Zero-delay cross correlation of the pair,
//   1/4 ( [(4 Delta^2 + Gamma^2) / (Gamma^2 x)]^2 + x^2 - 8 Delta^2 / Gamma^2 + 6 ).
// Diverges as x -> 0; the value is reported as is.
inline double g2_joint(const ResonatorParams &p, PumpRatio x, double delta)
{
    const double xv = x.value();
    if (xv == 0.0)
        throw UndefinedCorrelationError("g2 of the signal/idler pair is undefined at zero pump (0/0)");
    const double g2 = p.total_loss() * p.total_loss();
    const double lead = (4.0 * delta * delta + g2) / (g2 * xv);
    return 0.25 * (lead * lead + xv * xv - 8.0 * delta * delta / g2 + 6.0);
}

// Joint spectral intensity <b_s^dag b_i^dag b_s b_i>.  The closed form
//   4 kappa^2 Gamma^2 x^2 (D + 8 Gamma^4 x^2) / D^2,  D = pair_denominator
// is the expanded quartic rewritten without cancellations; eta enters squared.
inline double jsi(const ResonatorParams &p, PumpRatio x, double delta_s, double delta_i)
{
    const double big_gamma = p.total_loss();
    const double xv = x.value();
    const double den = detail::pair_denominator(big_gamma, xv, delta_s, delta_i);
    const double g4x2 = big_gamma * big_gamma * big_gamma * big_gamma * xv * xv;
    return p.eta * p.eta * 4.0 * p.kappa * p.kappa * big_gamma * big_gamma * xv * xv * (den + 8.0 * g4x2) / (den * den);
}
} // namespace qfc
