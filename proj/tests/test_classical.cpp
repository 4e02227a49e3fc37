#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qfc/classical.hpp"

using namespace qfc;

namespace
{
ResonatorParams bistable_ring(double d2 = 0.0)
{
    ResonatorParams p;
    p.kappa = 3e8;
    p.gamma = 2e8;
    p.g_opt = 1.5;
    p.g_th = 10.0;
    p.d2 = d2;
    p.omega_p = 1.21525907568313e15;
    return p;
}

double pump_residual(const ResonatorParams &p, double p_in, double delta_p0, double u)
{
    const double half = p.total_loss() / 2.0;
    const double det = delta_p0 + p.g_tot() * u;
    return u * (det * det + half * half) - p.kappa * p_in / p.photon_energy();
}
} // namespace

TEST(Cubic, RootsOfKnownPolynomials)
{
    auto r = detail::real_cubic_roots(1.0, -6.0, 11.0, -6.0);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_NEAR(r[0], 1.0, 1e-12);
    EXPECT_NEAR(r[1], 2.0, 1e-12);
    EXPECT_NEAR(r[2], 3.0, 1e-12);

    r = detail::real_cubic_roots(1.0, 0.0, 1.0, -2.0); // (u-1)(u^2+u+2)
    ASSERT_EQ(r.size(), 1u);
    EXPECT_NEAR(r[0], 1.0, 1e-12);

    r = detail::real_cubic_roots(1.0, -4.0, 5.0, -2.0); // (u-1)^2 (u-2)
    ASSERT_EQ(r.size(), 2u);
    EXPECT_NEAR(r[0], 1.0, 1e-7);
    EXPECT_NEAR(r[1], 2.0, 1e-12);
}

TEST(PumpSteadyState, ResidualBelowTolerance)
{
    const ResonatorParams p = bistable_ring();
    const double p_th = threshold_power(p);
    const double big_gamma = p.total_loss();
    for (double x : {0.1, 0.5, 0.99, 2.0, 5.0})
        for (int k = -40; k <= 4; ++k)
        {
            const double delta_p0 = 0.5 * k * big_gamma;
            const PumpState s = pump_steady_state(p, x * p_th, delta_p0);
            ASSERT_FALSE(s.roots.empty());
            const double drive = p.kappa * x * p_th / p.photon_energy();
            for (const auto &root : s.roots)
                EXPECT_LT(std::abs(pump_residual(p, x * p_th, delta_p0, root.photons)) / drive, 1e-9)
                    << "x=" << x << " delta_p0=" << delta_p0;
        }
}

TEST(PumpSteadyState, LinearCavityWithoutNonlinearity)
{
    ResonatorParams p = bistable_ring();
    const PumpState s = pump_steady_state(p, 0.0, 0.0);
    ASSERT_EQ(s.roots.size(), 1u);
    EXPECT_EQ(s.roots[0].photons, 0.0);

    // vanishing Kerr and thermal shift: Lorentzian response
    p.g_th = 0.0;
    p.g_opt = 1e-30;
    const double p_in = 1e-3;
    const double delta = 2e8;
    const PumpState lin = pump_steady_state(p, p_in, delta);
    ASSERT_EQ(lin.roots.size(), 1u);
    const double expected = p.kappa * p_in / p.photon_energy() / (delta * delta + 0.25 * p.total_loss() * p.total_loss());
    EXPECT_LT(test::rel_diff(lin.roots[0].photons, expected), 1e-9);
}

TEST(PumpSteadyState, BistabilityWindowMatchesDiscriminantAndBruteForce)
{
    const ResonatorParams p = bistable_ring();
    const double p_in = 3.0 * threshold_power(p);
    const double big_gamma = p.total_loss();
    const double a = p.g_tot() * p.g_tot();
    const double drive = p.kappa * p_in / p.photon_energy();
    int bistable_points = 0;
    for (int k = 0; k <= 400; ++k)
    {
        const double delta_p0 = -10.0 * big_gamma + 0.03 * k * big_gamma;
        const double b = 2.0 * delta_p0 * p.g_tot();
        const double c = delta_p0 * delta_p0 + 0.25 * big_gamma * big_gamma;
        const double disc = test::cubic_discriminant(a, b, c, -drive);
        const double disc_scale = std::abs(b * b * c * c) + std::abs(4.0 * a * c * c * c) + 27.0 * a * a * drive * drive;
        if (std::abs(disc) < 1e-6 * disc_scale)
            continue; // too close to a window edge for a sign comparison

        const PumpState s = pump_steady_state(p, p_in, delta_p0);
        EXPECT_EQ(s.roots.size() == 3, disc > 0.0) << "delta_p0=" << delta_p0;

        const double u_max = drive / (0.25 * big_gamma * big_gamma) * 1.01;
        const auto scanned = test::scan_roots(
            [&](double u) { return pump_residual(p, p_in, delta_p0, u) / drive; }, 0.0, u_max, 200000);
        ASSERT_EQ(scanned.size(), s.roots.size()) << "delta_p0=" << delta_p0;
        for (std::size_t i = 0; i < scanned.size(); ++i)
            EXPECT_LT(test::rel_diff(scanned[i], s.roots[i].photons), 1e-9);
        if (s.roots.size() == 3)
        {
            ++bistable_points;
            EXPECT_EQ(s.roots[0].stability, Stability::stable_lower);
            EXPECT_EQ(s.roots[1].stability, Stability::unstable_middle);
            EXPECT_EQ(s.roots[2].stability, Stability::stable_upper);
        }
    }
    EXPECT_GT(bistable_points, 0);
}

TEST(PumpSteadyState, StabilityLabelsAsText)
{
    EXPECT_STREQ(to_string(Stability::stable_lower), "stable-lower");
    EXPECT_STREQ(to_string(Stability::unstable_middle), "unstable-middle");
    EXPECT_STREQ(to_string(Stability::stable_upper), "stable-upper");
}

TEST(Detunings, InjectionLockedPumpAndPumpDetuning)
{
    const ResonatorParams p = bistable_ring();
    const auto x = PumpRatio::checked(0.5);
    EXPECT_NEAR(injection_locked_pump(p, x), 5e8 * 0.5 / 3.0, 1e-6);
    EXPECT_NEAR(pump_detuning(p, PumpRatio::checked(0.99)), -(11.5 * 5e8 / 3.0) * 0.99, 1e-3);
    ResonatorParams q = bistable_ring();
    q.kappa = 8e8;
    q.gamma = 2e8;
    q.g_opt = 1.5e6;
    q.g_th = 1.5e7;
    EXPECT_NEAR(injection_locked_pump(q, PumpRatio::checked(0.5)), 166.666666666667, 1e-9);
    EXPECT_NEAR(pump_detuning(q, PumpRatio::checked(0.9)), -4.95e9, 1e-3);
}

TEST(Detunings, EffectiveEqualsModeMinusPump)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i)
    {
        ResonatorParams p = bistable_ring((unit(rng) - 0.5) * 2e8);
        p.g_th = 20.0 * unit(rng);
        p.g_opt = 0.1 + 5.0 * unit(rng);
        const auto x = PumpRatio::checked(0.99 * unit(rng));
        const int mu = static_cast<int>(unit(rng) * 60.0) - 30;
        const double lhs = effective_detuning(p, x, mu);
        const double rhs = mode_detuning(p, x, mu) - pump_detuning(p, x);
        EXPECT_LE(std::abs(lhs - rhs), 1e-9 * std::max({std::abs(lhs), p.total_loss(), std::abs(p.d2) * mu * mu}));
        const ModeIndexing mi = mode_indexing(p, x, mu);
        EXPECT_EQ(mi.mu, mu);
        EXPECT_EQ(mi.delta_mu, mode_detuning(p, x, mu));
        EXPECT_EQ(mi.delta_eff, lhs);
    }
}

TEST(Detunings, EffectiveDetuningIndependentOfThermalCoefficient)
{
    ResonatorParams a = bistable_ring(1e7);
    ResonatorParams b = a;
    b.g_th = 1234.5;
    const auto x = PumpRatio::checked(0.7);
    for (int mu = -20; mu <= 20; ++mu)
        EXPECT_EQ(std::bit_cast<std::uint64_t>(effective_detuning(a, x, mu)),
                  std::bit_cast<std::uint64_t>(effective_detuning(b, x, mu)));
}

TEST(FirstCombMode, DispersionAndLossGiveModeTen)
{
    ResonatorParams p;
    p.kappa = 8e8;
    p.gamma = 2e8;
    p.g_opt = 1.5;
    p.d2 = 1e7;
    p.omega_p = 1.2e15;
    const auto onset = first_comb_mode(p, PumpRatio::unchecked(1.0));
    ASSERT_TRUE(onset);
    EXPECT_NEAR(onset->mu_real, 10.0, 1e-12);
    EXPECT_EQ(onset->lower, 10);
    EXPECT_EQ(onset->upper, 10);
}

TEST(FirstCombMode, IntegerCandidatesBracketTheSignChange)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 500; ++i)
    {
        ResonatorParams p = bistable_ring(std::pow(10.0, 5.0 + 3.0 * unit(rng)));
        const auto x = PumpRatio::checked(0.01 + 0.98 * unit(rng));
        const auto onset = first_comb_mode(p, x);
        ASSERT_TRUE(onset);
        EXPECT_LE(onset->lower, onset->upper);
        EXPECT_LE(onset->upper - onset->lower, 1);
        EXPECT_LE(effective_detuning(p, x, onset->lower), 1e-6 * p.total_loss());
        EXPECT_GE(effective_detuning(p, x, onset->upper), -1e-6 * p.total_loss());
        EXPECT_NEAR(effective_detuning(p, PumpRatio::unchecked(x.value()), 0) + 0.5 * p.d2 * onset->mu_real * onset->mu_real,
                    0.0, 1e-6 * p.total_loss());
    }
}

TEST(FirstCombMode, AbsentForNormalOrZeroDispersion)
{
    EXPECT_FALSE(first_comb_mode(bistable_ring(-1e7), PumpRatio::checked(0.9)));
    EXPECT_FALSE(first_comb_mode(bistable_ring(0.0), PumpRatio::checked(0.9)));
}

TEST(ThresholdRegion, ReducesToInjectionRootAtResonantPoint)
{
    // with g_th = 0, mu = 0 and delta_p0 = -Gamma the lower branch is Gamma / (2 g_opt)
    ResonatorParams p = bistable_ring();
    p.g_th = 0.0;
    const auto region = threshold_amplitude_region(p, -p.total_loss(), 0);
    ASSERT_TRUE(region);
    const double expected = p.total_loss() / (2.0 * p.g_opt);
    EXPECT_LT(test::rel_diff(region->lower, expected), 1e-12);
}

TEST(ThresholdRegion, NoRegionAtZeroDetuningAndZeroDispersion)
{
    ResonatorParams p = bistable_ring();
    p.g_th = 0.0;
    EXPECT_FALSE(threshold_amplitude_region(p, 0.0, 0));
}

TEST(ThresholdRegion, BranchesMatchDetLRootScan)
{
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 300; ++i)
    {
        ResonatorParams p = bistable_ring((unit(rng) - 0.3) * 4e7);
        p.kappa = std::pow(10.0, 7.5 + 2.0 * unit(rng));
        p.gamma = std::pow(10.0, 7.0 + 2.0 * unit(rng));
        p.g_opt = 0.5 + 3.0 * unit(rng);
        p.g_th = 15.0 * unit(rng);
        const double big_gamma = p.total_loss();
        const int mu = static_cast<int>(unit(rng) * 8.0);
        const double delta_p0 = -(0.5 + 6.0 * unit(rng)) * big_gamma;

        const auto region = threshold_amplitude_region(p, delta_p0, mu);
        if (!region)
            continue;
        ++checked;
        // mode detuning follows the pump shift: Delta(u) = D2 mu^2/2 - delta_p0 - (2 g + g_th) u
        const double kerr = 2.0 * p.g_opt + p.g_th;
        auto det_real = [&](double u) {
            const double delta = 0.5 * p.d2 * mu * mu - delta_p0 - kerr * u;
            return fwm_threshold_check(p, u, delta, delta).real();
        };
        const double u_hi = 2.0 * region->upper + 1.0;
        const auto roots = test::scan_roots(det_real, 0.0, u_hi, 400000);
        ASSERT_EQ(roots.size(), 2u);
        EXPECT_LT(test::rel_diff(roots[0], region->lower), 1e-9);
        EXPECT_LT(test::rel_diff(roots[1], region->upper), 1e-9);
    }
    EXPECT_GT(checked, 50);
}

TEST(ThresholdRegion, DispersionShiftsTheDetuningAxis)
{
    ResonatorParams p = bistable_ring(3e7);
    for (int mu = 0; mu <= 6; ++mu)
        for (double delta_p0 : {-3e9, -1.5e9, -8e8})
        {
            const auto shifted = threshold_amplitude_region(p, delta_p0, mu);
            const auto base = threshold_amplitude_region(p, delta_p0 - 0.5 * p.d2 * mu * mu, 0);
            ASSERT_EQ(shifted.has_value(), base.has_value());
            if (shifted)
            {
                EXPECT_LT(test::rel_diff(shifted->lower, base->lower), 1e-12);
                EXPECT_LT(test::rel_diff(shifted->upper, base->upper), 1e-12);
            }
        }
}

TEST(DetL, RootScanAgreesWithClosedForm)
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i)
    {
        ResonatorParams p = bistable_ring();
        p.kappa = std::pow(10.0, 7.0 + 3.0 * unit(rng));
        p.gamma = std::pow(10.0, 7.0 + 3.0 * unit(rng));
        p.g_opt = std::pow(10.0, -1.0 + 4.0 * unit(rng));
        const double big_gamma = p.total_loss();
        const double delta_s = (unit(rng) - 0.5) * 6.0 * big_gamma;
        const double delta_i = i % 2 ? delta_s : delta_s * unit(rng);
        const double product = delta_s * delta_i + 0.25 * big_gamma * big_gamma;
        if (product <= 0.0)
            continue;
        const double expected = std::sqrt(product) / p.g_opt;
        const auto roots = test::scan_roots(
            [&](double u) { return fwm_threshold_check(p, u, delta_s, delta_i).real(); }, 0.0, 3.0 * expected, 1000);
        ASSERT_EQ(roots.size(), 1u);
        EXPECT_LT(test::rel_diff(roots[0], expected), 1e-12);
        if (delta_s == delta_i)
        {
            EXPECT_EQ(fwm_threshold_check(p, roots[0], delta_s, delta_i).imag(), 0.0);
        }
    }
    ResonatorParams p = bistable_ring();
    EXPECT_LT(test::rel_diff(std::sqrt(0.25 * p.total_loss() * p.total_loss()) / p.g_opt,
                             p.total_loss() / (2.0 * p.g_opt)),
              1e-15);
}
