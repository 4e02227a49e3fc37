#pragma once

// Run configuration: an INI-like text format with unit suffixes,
//
//   [resonator]
//   kappa  = 800 MHz     # angular rate, 8e8 s^-1
//   lambda = 1550 nm
//   [pump]
//   p_n = 0.9
//
// Loading is strict: unknown sections/keys, duplicates and unknown units are
// rejected.  Everything is converted to SI on load.

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qfc/constants.hpp"
#include "qfc/core_model.hpp"
#include "qfc/errors.hpp"
#include "qfc/spectra.hpp"
#include "qfc/units.hpp"

namespace qfc
{
enum class OutputFormat
{
    csv,
    json
};

struct SweepConfig
{
    std::optional<int> mu_max;
    std::optional<LinearGrid> delta;    // effective detuning (squeeze)
    std::optional<LinearGrid> phi;      // local-oscillator phase (squeeze)
    std::optional<LinearGrid> delta_s;  // JSI
    std::optional<LinearGrid> delta_i;  // JSI
    std::optional<LinearGrid> x;        // normalized pump (g2)
    std::optional<LinearGrid> delta_p0; // bare pump detuning (threshold)
    std::optional<std::vector<double>> deltas;
};

struct OutputConfig
{
    std::optional<std::string> path;
    std::optional<OutputFormat> format;
};

struct RunConfig
{
    ResonatorParams resonator;
    std::optional<PumpDrive> pump;
    SweepConfig sweep;
    OutputConfig output;
    std::optional<double> transmission_rate; // [1/s]
    std::string t_provenance = "none";       // explicit | default | none
    std::vector<std::string> warnings;
};

namespace detail
{
struct KeySpec
{
    Dimension dim;
    bool list = false;
};

inline const std::map<std::string, std::map<std::string, KeySpec>> &config_schema()
{
    using D = Dimension;
    static const std::map<std::string, std::map<std::string, KeySpec>> schema{
        {"resonator",
         {{"kappa", {D::rate}},
          {"gamma", {D::rate}},
          {"g_opt", {D::rate}},
          {"g_th", {D::rate}},
          {"d1", {D::rate}},
          {"d2", {D::rate}},
          {"eta", {D::dimensionless}},
          {"omega_p", {D::angular_frequency}},
          {"lambda", {D::length}}}},
        {"geometry",
         {{"n_eff", {D::dimensionless}},
          {"l_eff", {D::length}},
          {"a_eff", {D::area}},
          {"v_g", {D::velocity}},
          {"n2", {D::nonlinear_index}},
          {"m", {D::dimensionless}}}},
        {"thermal", {{"gamma_abs", {D::rate}}, {"a_th", {D::per_kelvin}}, {"k_th", {D::conductivity}}}},
        {"pump", {{"p_in", {D::power}}, {"p_n", {D::dimensionless}}}},
        {"sweep",
         {{"mu_max", {D::dimensionless}},
          {"delta_min", {D::rate}},
          {"delta_max", {D::rate}},
          {"delta_count", {D::dimensionless}},
          {"phi_min", {D::angle}},
          {"phi_max", {D::angle}},
          {"phi_count", {D::dimensionless}},
          {"delta_s_min", {D::rate}},
          {"delta_s_max", {D::rate}},
          {"delta_s_count", {D::dimensionless}},
          {"delta_i_min", {D::rate}},
          {"delta_i_max", {D::rate}},
          {"delta_i_count", {D::dimensionless}},
          {"x_min", {D::dimensionless}},
          {"x_max", {D::dimensionless}},
          {"x_count", {D::dimensionless}},
          {"delta_p0_min", {D::rate}},
          {"delta_p0_max", {D::rate}},
          {"delta_p0_count", {D::dimensionless}},
          {"deltas", {D::rate, true}}}},
        {"conversion", {{"t", {D::rate}}}},
        {"output", {{"path", {D::dimensionless}}, {"format", {D::dimensionless}}}},
    };
    return schema;
}

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// "<number> [unit]" -> SI value.
inline double parse_quantity(std::string_view text, Dimension dim, const std::string &where)
{
    text = trim(text);
    double value = 0.0;
    const char *begin = text.data();
    const char *end = text.data() + text.size();
    if (!text.empty() && *begin == '+')
        ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || !std::isfinite(value))
        throw ConfigError(where + ": expected a number with unit [" + accepted_units(dim) + "], got '" +
                          std::string(text) + "'");
    const std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)));
    const auto scale = unit_scale(dim, unit);
    if (!scale)
        throw ConfigError(where + ": unknown unit '" + std::string(unit) + "' (expected " + si_unit(dim) +
                          "; accepted: " + accepted_units(dim) + ")");
    return value * *scale;
}

inline int parse_count(double v, const std::string &where)
{
    if (v < 0.0 || v != std::floor(v) || v > 1e9)
        throw ConfigError(where + ": expected a non-negative integer");
    return static_cast<int>(v);
}
} // namespace detail

inline RunConfig parse_config(const std::string &text, const std::string &source = "<config>")
{
    using detail::trim;
    const auto &schema = detail::config_schema();

    // section -> key -> raw value text
    std::map<std::string, std::map<std::string, std::string>> raw;
    std::map<std::string, std::map<std::string, int>> key_line;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const std::string where = source + ":" + std::to_string(line_no);
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty())
            continue;
        if (view.front() == '[')
        {
            if (view.back() != ']')
                throw ConfigError(where + ": malformed section header");
            section = std::string(trim(view.substr(1, view.size() - 2)));
            if (!schema.contains(section))
                throw ConfigError(where + ": unknown section [" + section + "]");
            raw[section];
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(where + ": expected 'key = value'");
        if (section.empty())
            throw ConfigError(where + ": key outside of any section");
        const std::string key(trim(view.substr(0, eq)));
        const auto &keys = schema.at(section);
        if (!keys.contains(key))
            throw ConfigError(where + ": unknown key '" + key + "' in [" + section + "]");
        if (raw[section].contains(key))
            throw ConfigError(where + ": duplicate key '" + key + "' in [" + section + "]");
        raw[section][key] = std::string(trim(view.substr(eq + 1)));
        key_line[section][key] = line_no;
    }

    auto has = [&](const std::string &s, const std::string &k) { return raw.contains(s) && raw.at(s).contains(k); };
    auto label = [&](const std::string &s, const std::string &k) {
        const bool known = key_line.contains(s) && key_line.at(s).contains(k);
        return source + (known ? ":" + std::to_string(key_line.at(s).at(k)) : std::string()) + ": [" + s + "] " + k;
    };
    auto quantity = [&](const std::string &s, const std::string &k) {
        return detail::parse_quantity(raw.at(s).at(k), schema.at(s).at(k).dim, label(s, k));
    };
    auto optional_quantity = [&](const std::string &s, const std::string &k) -> std::optional<double> {
        if (!has(s, k))
            return std::nullopt;
        return quantity(s, k);
    };
    auto required = [&](const std::string &s, const std::string &k) {
        if (!has(s, k))
            throw ConfigError(label(s, k) + ": missing (expected " + si_unit(schema.at(s).at(k).dim) + ")");
        return quantity(s, k);
    };

    RunConfig cfg;
    ResonatorParams &p = cfg.resonator;

    if (!raw.contains("resonator"))
        throw ConfigError(source + ": missing [resonator] section");
    p.kappa = required("resonator", "kappa");
    p.gamma = required("resonator", "gamma");
    p.d1 = optional_quantity("resonator", "d1").value_or(0.0);
    p.d2 = optional_quantity("resonator", "d2").value_or(0.0);
    p.eta = optional_quantity("resonator", "eta").value_or(1.0);

    const bool has_omega = has("resonator", "omega_p");
    const bool has_lambda = has("resonator", "lambda");
    if (has_omega == has_lambda)
        throw ConfigError(source + ": [resonator] needs exactly one of omega_p (rad/s) or lambda (m)");
    if (has_omega)
    {
        p.omega_p = quantity("resonator", "omega_p");
    }
    else
    {
        const double lambda = quantity("resonator", "lambda");
        if (!(lambda > 0.0))
            throw ConfigError(label("resonator", "lambda") + ": must be > 0");
        p.omega_p = 2.0 * constants::pi * constants::speed_of_light / lambda;
    }

    if (raw.contains("geometry"))
    {
        Geometry g;
        g.n_eff = required("geometry", "n_eff");
        g.l_eff = required("geometry", "l_eff");
        g.a_eff = required("geometry", "a_eff");
        g.v_g = required("geometry", "v_g");
        g.n2 = required("geometry", "n2");
        g.mode_number = detail::parse_count(optional_quantity("geometry", "m").value_or(0.0), label("geometry", "m"));
        p.geometry = g;
    }
    if (raw.contains("thermal"))
        p.thermal = Thermal{required("thermal", "gamma_abs"), required("thermal", "a_th"), required("thermal", "k_th")};

    if (has("resonator", "g_opt"))
    {
        p.g_opt = quantity("resonator", "g_opt");
        if (p.geometry)
            cfg.warnings.push_back("g_opt given directly and derivable from [geometry]; using the direct value");
    }
    else
    {
        p.g_opt = derive_g_opt(p.geometry, p.omega_p);
    }
    if (has("resonator", "g_th"))
    {
        p.g_th = quantity("resonator", "g_th");
        if (p.thermal)
            cfg.warnings.push_back("g_th given directly and derivable from [thermal]; using the direct value");
    }
    else if (p.thermal)
    {
        p.g_th = derive_g_th(p.thermal, p.geometry, p.omega_p);
    }
    validate(p);

    if (raw.contains("pump"))
    {
        const bool has_p_in = has("pump", "p_in");
        const bool has_p_n = has("pump", "p_n");
        if (has_p_in == has_p_n)
            throw ConfigError(source + ": [pump] needs exactly one of p_in (W) or p_n");
        cfg.pump = has_p_in ? PumpDrive::watts(quantity("pump", "p_in")) : PumpDrive::ratio(quantity("pump", "p_n"));
    }

    auto grid = [&](const std::string &name) -> std::optional<LinearGrid> {
        const std::string kmin = name + "_min", kmax = name + "_max", kcount = name + "_count";
        const int present = has("sweep", kmin) + has("sweep", kmax) + has("sweep", kcount);
        if (present == 0)
            return std::nullopt;
        if (present != 3)
            throw ConfigError(source + ": [sweep] grid '" + name + "' needs " + kmin + ", " + kmax + " and " + kcount);
        LinearGrid g;
        g.min = quantity("sweep", kmin);
        g.max = quantity("sweep", kmax);
        g.count = static_cast<std::size_t>(detail::parse_count(quantity("sweep", kcount), label("sweep", kcount)));
        if (g.count == 0)
            throw ConfigError(label("sweep", kcount) + ": must be >= 1");
        return g;
    };
    SweepConfig &s = cfg.sweep;
    if (has("sweep", "mu_max"))
        s.mu_max = detail::parse_count(quantity("sweep", "mu_max"), label("sweep", "mu_max"));
    s.delta = grid("delta");
    s.phi = grid("phi");
    s.delta_s = grid("delta_s");
    s.delta_i = grid("delta_i");
    s.x = grid("x");
    s.delta_p0 = grid("delta_p0");
    if (has("sweep", "deltas"))
    {
        std::vector<double> values;
        std::string_view list = raw.at("sweep").at("deltas");
        std::size_t index = 0;
        while (true)
        {
            const auto comma = list.find(',');
            values.push_back(detail::parse_quantity(list.substr(0, comma), Dimension::rate,
                                                    label("sweep", "deltas") + "[" + std::to_string(index++) + "]"));
            if (comma == std::string_view::npos)
                break;
            list = list.substr(comma + 1);
        }
        s.deltas = values;
    }

    if (has("conversion", "t"))
    {
        cfg.transmission_rate = quantity("conversion", "t");
        if (!(*cfg.transmission_rate > 0.0))
            throw ConfigError(label("conversion", "t") + ": must be > 0");
        cfg.t_provenance = "explicit";
    }
    else if (p.geometry)
    {
        // inverse round-trip time
        cfg.transmission_rate = p.geometry->v_g / p.geometry->l_eff;
        cfg.t_provenance = "default";
    }

    if (has("output", "path"))
        cfg.output.path = raw.at("output").at("path");
    if (has("output", "format"))
    {
        const std::string f = raw.at("output").at("format");
        if (f == "csv")
            cfg.output.format = OutputFormat::csv;
        else if (f == "json")
            cfg.output.format = OutputFormat::json;
        else
            throw ConfigError(label("output", "format") + ": expected csv or json, got '" + f + "'");
    }
    return cfg;
}

inline RunConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path);
}
} // namespace qfc
