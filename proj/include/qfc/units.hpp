#pragma once

// Unit conversions between intracavity photon numbers, waveguide photon flux
// and optical power, plus the unit-suffix vocabulary accepted by the config
// loader.  Under the project-wide convention every rate is an angular rate in
// s^-1, so "MHz" means 1e6 s^-1 (no 2 pi).

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qfc/constants.hpp"

namespace qfc
{
inline double to_db(double ratio) { return 10.0 * std::log10(ratio); }

// Photon number inside the ring -> flux in the bus waveguide [1/s].
inline double intracavity_to_flux(double photons, double transmission_rate) { return transmission_rate * photons; }

inline double flux_to_power(double flux, double omega) { return constants::hbar * omega * flux; }

inline double power_to_flux(double power, double omega) { return power / (constants::hbar * omega); }

enum class Dimension
{
    dimensionless,
    rate,              // s^-1
    angular_frequency, // rad/s
    power,             // W
    length,            // m
    area,              // m^2
    velocity,          // m/s
    nonlinear_index,   // m^2/W
    per_kelvin,        // 1/K
    conductivity,      // W/(m K)
    angle              // rad
};

inline const char *si_unit(Dimension d)
{
    switch (d)
    {
    case Dimension::dimensionless:
        return "1";
    case Dimension::rate:
        return "1/s";
    case Dimension::angular_frequency:
        return "rad/s";
    case Dimension::power:
        return "W";
    case Dimension::length:
        return "m";
    case Dimension::area:
        return "m^2";
    case Dimension::velocity:
        return "m/s";
    case Dimension::nonlinear_index:
        return "m^2/W";
    case Dimension::per_kelvin:
        return "1/K";
    case Dimension::conductivity:
        return "W/(m K)";
    case Dimension::angle:
        return "rad";
    }
    return "?";
}

// Scale factor to SI for a unit suffix, or nullopt if the suffix is not a unit
// of the given dimension.  An empty suffix always means "already SI".
inline std::optional<double> unit_scale(Dimension d, std::string_view unit)
{
    if (unit.empty())
        return 1.0;

    static const std::map<std::string, double, std::less<>> rate{
        {"1/s", 1.0}, {"s^-1", 1.0}, {"rad/s", 1.0}, {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}, {"THz", 1e12}};
    static const std::map<std::string, double, std::less<>> power{
        {"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6}, {"nW", 1e-9}, {"pW", 1e-12}};
    static const std::map<std::string, double, std::less<>> length{
        {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}, {"nm", 1e-9}};
    static const std::map<std::string, double, std::less<>> area{{"m^2", 1.0}, {"um^2", 1e-12}, {"nm^2", 1e-18}};
    static const std::map<std::string, double, std::less<>> velocity{{"m/s", 1.0}};
    static const std::map<std::string, double, std::less<>> nonlinear{{"m^2/W", 1.0}, {"cm^2/W", 1e-4}};
    static const std::map<std::string, double, std::less<>> per_kelvin{{"1/K", 1.0}, {"K^-1", 1.0}};
    static const std::map<std::string, double, std::less<>> conductivity{{"W/(m K)", 1.0}, {"W/(m*K)", 1.0},
                                                                        {"W/mK", 1.0}};
    static const std::map<std::string, double, std::less<>> angle{{"rad", 1.0}, {"deg", constants::pi / 180.0}};

    const std::map<std::string, double, std::less<>> *table = nullptr;
    switch (d)
    {
    case Dimension::dimensionless:
        return unit == "1" ? std::optional<double>(1.0) : std::nullopt;
    case Dimension::rate:
        table = &rate;
        break;
    case Dimension::angular_frequency:
        // angular frequencies are given in rad/s only; a "THz" pump would be ambiguous by 2 pi
        return unit == "rad/s" ? std::optional<double>(1.0) : std::nullopt;
    case Dimension::power:
        table = &power;
        break;
    case Dimension::length:
        table = &length;
        break;
    case Dimension::area:
        table = &area;
        break;
    case Dimension::velocity:
        table = &velocity;
        break;
    case Dimension::nonlinear_index:
        table = &nonlinear;
        break;
    case Dimension::per_kelvin:
        table = &per_kelvin;
        break;
    case Dimension::conductivity:
        table = &conductivity;
        break;
    case Dimension::angle:
        table = &angle;
        break;
    }
    const auto it = table->find(unit);
    if (it == table->end())
        return std::nullopt;
    return it->second;
}

// Accepted suffixes for error messages.
inline std::string accepted_units(Dimension d)
{
    static const std::map<Dimension, std::string> names{
        {Dimension::dimensionless, "none"},
        {Dimension::rate, "1/s, s^-1, rad/s, Hz, kHz, MHz, GHz, THz"},
        {Dimension::angular_frequency, "rad/s"},
        {Dimension::power, "W, mW, uW, nW, pW"},
        {Dimension::length, "m, cm, mm, um, nm"},
        {Dimension::area, "m^2, um^2, nm^2"},
        {Dimension::velocity, "m/s"},
        {Dimension::nonlinear_index, "m^2/W, cm^2/W"},
        {Dimension::per_kelvin, "1/K, K^-1"},
        {Dimension::conductivity, "W/(m K), W/(m*K), W/mK"},
        {Dimension::angle, "rad, deg"}};
    return names.at(d);
}
} // namespace qfc
