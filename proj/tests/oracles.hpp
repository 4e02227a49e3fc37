#pragma once

// Test-only reference computations.  Nothing here calls into the code paths it
// is used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace qfc::test
{
// Constants entered independently of qfc::constants (hbar from the exact h).
inline constexpr double planck_h = 6.62607015e-34;
inline constexpr double c_light = 299792458.0;
inline const double hbar_ref = planck_h / (2.0 * 3.141592653589793238462643383);

inline double rel_diff(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline double rel_diff(std::complex<double> a, std::complex<double> b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// All sign changes of f on a uniform grid over [lo, hi], refined by bisection.
inline std::vector<double> scan_roots(const std::function<double(double)> &f, double lo, double hi, int samples)
{
    std::vector<double> roots;
    double prev_x = lo;
    double prev_f = f(lo);
    for (int i = 1; i <= samples; ++i)
    {
        const double x = lo + (hi - lo) * i / samples;
        const double fx = f(x);
        if (prev_f == 0.0)
            roots.push_back(prev_x);
        else if ((prev_f < 0.0) != (fx < 0.0) && fx != 0.0)
        {
            double a = prev_x, b = x, fa = prev_f;
            for (int it = 0; it < 200 && b - a > 1e-15 * std::abs(b); ++it)
            {
                const double mid = 0.5 * (a + b);
                const double fm = f(mid);
                if ((fm < 0.0) == (fa < 0.0))
                {
                    a = mid;
                    fa = fm;
                }
                else
                    b = mid;
            }
            roots.push_back(0.5 * (a + b));
        }
        prev_x = x;
        prev_f = fx;
    }
    return roots;
}

// Discriminant of a u^3 + b u^2 + c u + d; positive <=> three distinct real roots.
inline double cubic_discriminant(double a, double b, double c, double d)
{
    return 18.0 * a * b * c * d - 4.0 * b * b * b * d + b * b * c * c - 4.0 * a * c * c * c - 27.0 * a * a * d * d;
}

// Minimizer of a pi-periodic function: dense grid then golden-section polish.
inline double argmin_periodic(const std::function<double(double)> &f, double lo, int samples = 20000)
{
    const double period = 3.141592653589793238462643383;
    double best = lo, best_f = f(lo);
    for (int i = 1; i < samples; ++i)
    {
        const double x = lo + period * i / samples;
        const double fx = f(x);
        if (fx < best_f)
        {
            best = x;
            best_f = fx;
        }
    }
    double a = best - period / samples, b = best + period / samples;
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 200; ++it)
    {
        const double c = b - ratio * (b - a), d = a + ratio * (b - a);
        if (f(c) < f(d))
            b = d;
        else
            a = c;
    }
    return 0.5 * (a + b);
}

inline double wrap_pi(double angle)
{
    const double period = 3.141592653589793238462643383;
    double r = std::fmod(angle, period);
    if (r < 0.0)
        r += period;
    return r;
}

// Distance between two angles modulo pi.
inline double angle_distance_mod_pi(double a, double b)
{
    const double period = 3.141592653589793238462643383;
    const double d = wrap_pi(a - b);
    return std::min(d, period - d);
}

// Parameter tuple of the oracle-equivalence suite.
struct Tuple
{
    double kappa, gamma, x, delta, eta;
};

inline std::vector<Tuple> random_tuples(std::size_t count, std::uint64_t seed, double x_max = 0.99)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log_rate(7.0, 10.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sym(-5.0, 5.0);
    std::vector<Tuple> tuples;
    tuples.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
    {
        Tuple t{};
        t.kappa = std::pow(10.0, log_rate(rng));
        t.gamma = std::pow(10.0, log_rate(rng));
        t.x = x_max * unit(rng);
        t.delta = sym(rng) * (t.kappa + t.gamma);
        t.eta = unit(rng);
        tuples.push_back(t);
    }
    return tuples;
}
} // namespace qfc::test
