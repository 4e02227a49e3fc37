#pragma once

// Physical parameters of one microring resonator + pump configuration and the
// rates derived from them.  All rates are angular rates in s^-1.

#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

#include "qfc/constants.hpp"
#include "qfc/errors.hpp"

namespace qfc
{
// Waveguide/ring geometry used to derive g_opt and the cold resonance.
struct Geometry
{
    double n_eff = 0.0;          // effective refractive index
    double l_eff = 0.0;          // effective ring length [m]
    double a_eff = 0.0;          // effective mode area [m^2]
    double v_g = 0.0;            // group velocity [m/s]
    double n2 = 0.0;             // nonlinear refractive index [m^2/W]
    std::int64_t mode_number = 0; // azimuthal mode number m of the pumped resonance
};

// Inputs for the thermal nonlinearity.
struct Thermal
{
    double gamma_abs = 0.0; // absorption loss rate [s^-1]
    double a_th = 0.0;      // temperature coefficient [1/K]
    double k_th = 0.0;      // thermal conductivity [W/(m K)]
};

struct ResonatorParams
{
    double kappa = 0.0;   // waveguide-ring coupling rate
    double gamma = 0.0;   // intrinsic loss rate
    double g_opt = 0.0;   // Kerr nonlinearity per photon
    double g_th = 0.0;    // thermal nonlinearity per photon
    double d1 = 0.0;      // FSR term of the dispersion series
    double d2 = 0.0;      // second-order dispersion (> 0 anomalous, < 0 normal)
    double eta = 1.0;     // collection efficiency after the resonator
    double omega_p = 0.0; // pump angular frequency [rad/s]
    std::optional<Geometry> geometry;
    std::optional<Thermal> thermal;

    // Total damping Gamma = kappa + gamma.  Never cached.
    double total_loss() const { return kappa + gamma; }
    double g_tot() const { return g_opt + g_th; }
    double photon_energy() const { return constants::hbar * omega_p; }
};

// Throws ConfigError naming the first violated constraint.
inline void validate(const ResonatorParams &p)
{
    auto fail = [](const std::string &what) { throw ConfigError("invalid resonator parameters: " + what); };
    if (!std::isfinite(p.kappa) || !(p.kappa > 0.0))
        fail("kappa must be > 0");
    if (!std::isfinite(p.gamma) || p.gamma < 0.0)
        fail("gamma must be >= 0");
    if (!std::isfinite(p.eta) || p.eta < 0.0 || p.eta > 1.0)
        fail("eta must lie in [0, 1]");
    if (!std::isfinite(p.g_opt) || !(p.g_opt > 0.0))
        fail("g_opt must be > 0");
    if (!std::isfinite(p.g_th) || p.g_th < 0.0)
        fail("g_th must be >= 0");
    if (!std::isfinite(p.omega_p) || !(p.omega_p > 0.0))
        fail("omega_p must be > 0");
    if (!std::isfinite(p.d1) || !std::isfinite(p.d2))
        fail("dispersion terms must be finite");
}

// Normalized pump x = P_in / P_th.  checked() enforces the linearization bound;
// unchecked() exists for limit studies (x -> 1) and never escapes into datasets.
class PumpRatio
{
public:
    static PumpRatio checked(double x)
    {
        if (!std::isfinite(x) || x < 0.0)
        {
            std::ostringstream os;
            os << "normalized pump must be a finite value >= 0, got " << x;
            throw ValidityError(os.str());
        }
        if (x > constants::linearization_bound)
        {
            std::ostringstream os;
            os.precision(17);
            os << "normalized pump P_in/P_th = " << x << " exceeds the linearization bound "
               << constants::linearization_bound << " (model valid only below the FWM threshold)";
            throw ValidityError(os.str());
        }
        return PumpRatio(x);
    }
    static constexpr PumpRatio unchecked(double x) { return PumpRatio(x); }

    constexpr double value() const { return x_; }

private:
    constexpr explicit PumpRatio(double x) : x_(x) {}
    double x_;
};

// Either an absolute input power or a power already normalized to P_th.
struct PumpDrive
{
    enum class Kind
    {
        input_power,
        normalized
    };
    Kind kind = Kind::normalized;
    double value = 0.0; // [W] or dimensionless

    static PumpDrive watts(double p_in) { return {Kind::input_power, p_in}; }
    static PumpDrive ratio(double p_n) { return {Kind::normalized, p_n}; }
};

inline void require_positive_geometry(const Geometry &g)
{
    if (!(g.n_eff > 0.0) || !(g.l_eff > 0.0) || !(g.a_eff > 0.0) || !(g.v_g > 0.0) || !(g.n2 > 0.0))
        throw ConfigError("geometry block requires n_eff, l_eff, a_eff, v_g, n2 > 0");
}

// g_opt = hbar w_p^2 v_g^2 n2 / (c A_eff L_eff)
inline double derive_g_opt(const std::optional<Geometry> &geometry, double omega_p)
{
    if (!geometry)
        throw ConfigError("g_opt is neither given nor derivable: missing [geometry] block");
    require_positive_geometry(*geometry);
    const auto &g = *geometry;
    return constants::hbar * omega_p * omega_p * g.v_g * g.v_g * g.n2 /
           (constants::speed_of_light * g.a_eff * g.l_eff);
}

// g_th = hbar w_p^2 n_eff gamma_abs a_th / (2 k L_eff)
inline double derive_g_th(const std::optional<Thermal> &thermal, const std::optional<Geometry> &geometry,
                          double omega_p)
{
    if (!thermal)
        throw ConfigError("g_th is neither given nor derivable: missing [thermal] block");
    if (!geometry)
        throw ConfigError("g_th derivation needs n_eff and l_eff from the [geometry] block");
    const auto &t = *thermal;
    if (t.gamma_abs < 0.0 || !(t.k_th > 0.0))
        throw ConfigError("thermal block requires gamma_abs >= 0 and k_th > 0");
    if (!(geometry->n_eff > 0.0) || !(geometry->l_eff > 0.0))
        throw ConfigError("thermal derivation requires n_eff, l_eff > 0");
    return constants::hbar * omega_p * omega_p * geometry->n_eff * t.gamma_abs * t.a_th /
           (2.0 * t.k_th * geometry->l_eff);
}

// Minimum FWM threshold at perfect resonance, P_th = Gamma^3 hbar w_p / (8 g_opt kappa).
inline double threshold_power(const ResonatorParams &p)
{
    const double big_gamma = p.total_loss();
    return big_gamma * big_gamma * big_gamma * p.photon_energy() / (8.0 * p.g_opt * p.kappa);
}

inline PumpRatio normalize_pump(const PumpDrive &drive, const ResonatorParams &p)
{
    if (drive.kind == PumpDrive::Kind::normalized)
        return PumpRatio::checked(drive.value);
    if (!std::isfinite(drive.value) || drive.value < 0.0)
        throw ValidityError("input power must be >= 0");
    return PumpRatio::checked(drive.value / threshold_power(p));
}

inline double input_power(const PumpDrive &drive, const ResonatorParams &p)
{
    return drive.kind == PumpDrive::Kind::input_power ? drive.value : drive.value * threshold_power(p);
}

// Cold-cavity resonance w_R = 2 pi c m / (n_eff L_eff).
inline double cold_resonance(const ResonatorParams &p, std::int64_t mode_number)
{
    if (!p.geometry || !(p.geometry->n_eff > 0.0) || !(p.geometry->l_eff > 0.0))
        throw ConfigError("cold resonance needs n_eff and l_eff from the [geometry] block");
    return 2.0 * constants::pi * constants::speed_of_light * static_cast<double>(mode_number) /
           (p.geometry->n_eff * p.geometry->l_eff);
}
} // namespace qfc
