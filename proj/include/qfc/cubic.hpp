#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "qfc/constants.hpp"

namespace qfc::detail
{
// Real roots of c3 u^3 + c2 u^2 + c1 u + c0 = 0 (c3 != 0), sorted ascending.
// Cardano/trigonometric solution of the depressed cubic on a rescaled variable,
// followed by damped Newton polishing on the original polynomial.  Roots closer
// than merge_rel (relative to their magnitude) are reported once; a double root
// is only resolved to about sqrt(eps), hence the default.
inline std::vector<double> real_cubic_roots(double c3, double c2, double c1, double c0, double merge_rel = 1e-7)
{
    const double a = c2 / c3;
    const double b = c1 / c3;
    const double c = c0 / c3;

    double scale = std::max({std::abs(a), std::sqrt(std::abs(b)), std::cbrt(std::abs(c))});
    if (scale == 0.0)
        return {0.0};

    const double as = a / scale;
    const double bs = b / (scale * scale);
    const double cs = c / (scale * scale * scale);

    // v = t - as/3,  t^3 + p t + q = 0
    const double p = bs - as * as / 3.0;
    const double q = 2.0 * as * as * as / 27.0 - as * bs / 3.0 + cs;
    const double disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);

    std::vector<double> roots;
    if (disc > 0.0)
    {
        const double big = std::cbrt(std::abs(q) / 2.0 + std::sqrt(disc));
        const double signed_big = q > 0.0 ? -big : big;
        const double t = signed_big == 0.0 ? 0.0 : signed_big - p / (3.0 * signed_big);
        roots.push_back(t);
    }
    else if (p == 0.0)
    {
        roots.push_back(0.0);
    }
    else
    {
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(r * std::cos(theta - 2.0 * constants::pi * k / 3.0));
    }

    auto poly = [&](double u) { return ((u + a) * u + b) * u + c; };
    auto deriv = [&](double u) { return (3.0 * u + 2.0 * a) * u + b; };

    for (double &t : roots)
    {
        double u = (t - as / 3.0) * scale;
        double f = poly(u);
        for (int it = 0; it < 60 && f != 0.0; ++it)
        {
            const double d = deriv(u);
            if (d == 0.0)
                break;
            double step = f / d;
            double lambda = 1.0;
            bool improved = false;
            for (int h = 0; h < 30; ++h)
            {
                const double trial = u - lambda * step;
                const double ft = poly(trial);
                if (std::abs(ft) < std::abs(f))
                {
                    u = trial;
                    f = ft;
                    improved = true;
                    break;
                }
                lambda *= 0.5;
            }
            if (!improved || std::abs(lambda * step) <= 4e-16 * std::abs(u))
                break;
        }
        t = u;
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> merged;
    for (double u : roots)
    {
        if (!merged.empty() && std::abs(u - merged.back()) <= merge_rel * std::max(std::abs(u), std::abs(merged.back())))
            continue;
        merged.push_back(u);
    }
    return merged;
}
} // namespace qfc::detail
