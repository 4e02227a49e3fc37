#pragma once

// Classical below-threshold steady state: pump amplitude with Kerr + thermal
// bistability, per-mode detunings, threshold regions and the first comb line.

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "qfc/core_model.hpp"
#include "qfc/cubic.hpp"

namespace qfc
{
enum class Stability
{
    stable_lower,
    unstable_middle,
    stable_upper
};

inline const char *to_string(Stability s)
{
    switch (s)
    {
    case Stability::stable_lower:
        return "stable-lower";
    case Stability::unstable_middle:
        return "unstable-middle";
    case Stability::stable_upper:
        return "stable-upper";
    }
    return "?";
}

struct PumpRoot
{
    double photons = 0.0; // |alpha_p|^2
    Stability stability = Stability::stable_lower;
};

struct PumpState
{
    std::vector<PumpRoot> roots; // ascending in photons, 1 to 3 entries
    double delta_p0 = 0.0;       // bare pump detuning [rad/s]
    double x = 0.0;              // P_in / P_th, not bounded here
};

struct ModeIndexing
{
    int mu = 0;
    double delta_mu = 0.0;  // mode detuning
    double delta_eff = 0.0; // detuning relative to the pump
};

struct CombOnset
{
    double mu_real = 0.0;
    int lower = 0; // floor(mu_real)
    int upper = 0; // ceil(mu_real)
};

struct ThresholdRegion
{
    double lower = 0.0; // photons
    double upper = 0.0;
};

// Intracavity pump photon number(s) u solving
//   u [(delta_p0 + g_tot u)^2 + Gamma^2/4] = kappa P_in / (hbar w_p).
// A single root is labelled stable-lower.
inline PumpState pump_steady_state(const ResonatorParams &p, double p_in, double delta_p0)
{
    PumpState state;
    state.delta_p0 = delta_p0;
    state.x = p_in / threshold_power(p);

    const double half_loss = p.total_loss() / 2.0;
    const double drive = p.kappa * p_in / p.photon_energy();
    const double g = p.g_tot();

    if (drive <= 0.0)
    {
        state.roots.push_back({0.0, Stability::stable_lower});
        return state;
    }
    if (g == 0.0)
    {
        state.roots.push_back({drive / (delta_p0 * delta_p0 + half_loss * half_loss), Stability::stable_lower});
        return state;
    }

    auto roots = detail::real_cubic_roots(g * g, 2.0 * delta_p0 * g, delta_p0 * delta_p0 + half_loss * half_loss,
                                          -drive);
    std::erase_if(roots, [](double u) { return u < 0.0; });

    // dF/du of the drive curve; negative slope marks the unstable branch
    auto slope = [&](double u) {
        return 3.0 * g * g * u * u + 4.0 * delta_p0 * g * u + delta_p0 * delta_p0 + half_loss * half_loss;
    };

    if (roots.size() == 3)
    {
        state.roots = {{roots[0], Stability::stable_lower},
                       {roots[1], Stability::unstable_middle},
                       {roots[2], Stability::stable_upper}};
    }
    else if (roots.size() == 2)
    {
        // tangent point at a window edge: the double root is marginal
        const bool first_is_double = std::abs(slope(roots[0])) < std::abs(slope(roots[1]));
        state.roots = first_is_double
                          ? std::vector<PumpRoot>{{roots[0], Stability::unstable_middle},
                                                  {roots[1], Stability::stable_upper}}
                          : std::vector<PumpRoot>{{roots[0], Stability::stable_lower},
                                                  {roots[1], Stability::unstable_middle}};
    }
    else
    {
        for (double u : roots)
            state.roots.push_back({u, Stability::stable_lower});
    }
    return state;
}

// |alpha_p|^2 = Gamma x / (2 g_opt) at injection locking.
inline double injection_locked_pump(const ResonatorParams &p, PumpRatio x)
{
    return p.total_loss() * x.value() / (2.0 * p.g_opt);
}

// Delta_p0 = -(g_tot Gamma / 2 g_opt) x
inline double pump_detuning(const ResonatorParams &p, PumpRatio x)
{
    return -(p.g_tot() * p.total_loss()) / (2.0 * p.g_opt) * x.value();
}

// Delta_mu = D2 mu^2 / 2 - Gamma (g_th + 2 g_opt) / (2 g_opt) x
inline double mode_detuning(const ResonatorParams &p, PumpRatio x, int mu)
{
    const double m = static_cast<double>(mu);
    return 0.5 * p.d2 * m * m - p.total_loss() * (p.g_th + 2.0 * p.g_opt) / (2.0 * p.g_opt) * x.value();
}

// Delta_mu,eff = D2 mu^2 / 2 - Gamma x / 2.  Independent of g_th.
inline double effective_detuning(const ResonatorParams &p, PumpRatio x, int mu)
{
    const double m = static_cast<double>(mu);
    return 0.5 * p.d2 * m * m - 0.5 * p.total_loss() * x.value();
}

inline ModeIndexing mode_indexing(const ResonatorParams &p, PumpRatio x, int mu)
{
    return {mu, mode_detuning(p, x, mu), effective_detuning(p, x, mu)};
}

// Positive root of Delta_mu,eff = 0; absent for normal (or zero) dispersion.
inline std::optional<CombOnset> first_comb_mode(const ResonatorParams &p, PumpRatio x)
{
    if (!(p.d2 > 0.0))
        return std::nullopt;
    const double mu = std::sqrt(p.total_loss() * x.value() / p.d2);
    return CombOnset{mu, static_cast<int>(std::floor(mu)), static_cast<int>(std::ceil(mu))};
}

// Both branches of the pump photon number at which mode mu reaches the FWM
// threshold, combining the detuned threshold condition with the SPM/XPM-shifted
// mode detuning.  Absent when the discriminant is negative.
inline std::optional<ThresholdRegion> threshold_amplitude_region(const ResonatorParams &p, double delta_p0, int mu)
{
    const double g = p.g_opt;
    const double gt = p.g_th;
    const double big_gamma = p.total_loss();
    const double m = static_cast<double>(mu);

    const double shift = p.d2 * m * m - 2.0 * delta_p0;
    const double kerr = 2.0 * g + gt;
    const double denom = 6.0 * g * g + 8.0 * g * gt + 2.0 * gt * gt;

    const double lead = g * g * shift * shift;
    const double loss_term = big_gamma * big_gamma * (3.0 * g * g + 4.0 * g * gt + gt * gt);
    double disc = lead - loss_term;
    if (std::abs(disc) <= 1e-12 * std::max(lead, loss_term))
        disc = 0.0;
    if (disc < 0.0)
        return std::nullopt;

    const double root = std::sqrt(disc);
    ThresholdRegion region{(shift * kerr - root) / denom, (shift * kerr + root) / denom};
    if (region.lower < 0.0 || region.upper < 0.0)
        return std::nullopt;
    return region;
}

// det(L) of the signal/idler classical matrix for pump photon number u.  The
// real part crosses zero at u = sqrt(Delta_i Delta_s + Gamma^2/4) / g_opt.
inline std::complex<double> fwm_threshold_check(const ResonatorParams &p, double u, double delta_s, double delta_i)
{
    using namespace std::complex_literals;
    const double half_loss = p.total_loss() / 2.0;
    const std::complex<double> diag = (1i * delta_s - half_loss) * (-1i * delta_i - half_loss);
    return diag - p.g_opt * p.g_opt * u * u;
}
} // namespace qfc
