#pragma once

// Dataset builders: comb spectra, squeezing maps, JSI maps, g2 curves and the
// classical threshold map.  Every builder records its full input in `meta`, and
// rebuild() regenerates the identical dataset from that record.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qfc/classical.hpp"
#include "qfc/closed_forms.hpp"
#include "qfc/core_model.hpp"
#include "qfc/errors.hpp"
#include "qfc/parallel.hpp"
#include "qfc/units.hpp"

namespace qfc
{
inline constexpr const char *artifact_version = "1.0.0";

struct Column
{
    std::string name;
    std::string unit;
};

// Rows hold exactly schema.size() finite values; missing values are expressed
// by omitting the row.
struct SpectrumDataset
{
    std::vector<Column> schema;
    std::vector<std::vector<double>> rows;
    nlohmann::json meta;

    std::size_t column(const std::string &name) const
    {
        for (std::size_t i = 0; i < schema.size(); ++i)
            if (schema[i].name == name)
                return i;
        throw Error("dataset has no column '" + name + "'");
    }
};

// Inclusive linear spacing.
struct LinearGrid
{
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 1;

    double at(std::size_t i) const
    {
        if (count <= 1)
            return min;
        return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    std::vector<double> values() const
    {
        std::vector<double> v(count);
        for (std::size_t i = 0; i < count; ++i)
            v[i] = at(i);
        return v;
    }
};

inline void to_json(nlohmann::json &j, const LinearGrid &g) { j = {{"min", g.min}, {"max", g.max}, {"count", g.count}}; }
inline void from_json(const nlohmann::json &j, LinearGrid &g)
{
    j.at("min").get_to(g.min);
    j.at("max").get_to(g.max);
    j.at("count").get_to(g.count);
}

inline void to_json(nlohmann::json &j, const ResonatorParams &p)
{
    j = {{"kappa", p.kappa}, {"gamma", p.gamma}, {"g_opt", p.g_opt}, {"g_th", p.g_th}, {"d1", p.d1},
         {"d2", p.d2},       {"eta", p.eta},     {"omega_p", p.omega_p}};
    if (p.geometry)
    {
        const auto &g = *p.geometry;
        j["geometry"] = {{"n_eff", g.n_eff}, {"l_eff", g.l_eff}, {"a_eff", g.a_eff},
                         {"v_g", g.v_g},     {"n2", g.n2},       {"m", g.mode_number}};
    }
    if (p.thermal)
    {
        const auto &t = *p.thermal;
        j["thermal"] = {{"gamma_abs", t.gamma_abs}, {"a_th", t.a_th}, {"k_th", t.k_th}};
    }
}

inline void from_json(const nlohmann::json &j, ResonatorParams &p)
{
    j.at("kappa").get_to(p.kappa);
    j.at("gamma").get_to(p.gamma);
    j.at("g_opt").get_to(p.g_opt);
    j.at("g_th").get_to(p.g_th);
    j.at("d1").get_to(p.d1);
    j.at("d2").get_to(p.d2);
    j.at("eta").get_to(p.eta);
    j.at("omega_p").get_to(p.omega_p);
    if (j.contains("geometry"))
    {
        const auto &g = j.at("geometry");
        p.geometry = Geometry{g.at("n_eff"), g.at("l_eff"), g.at("a_eff"), g.at("v_g"), g.at("n2"), g.at("m")};
    }
    if (j.contains("thermal"))
    {
        const auto &t = j.at("thermal");
        p.thermal = Thermal{t.at("gamma_abs"), t.at("a_th"), t.at("k_th")};
    }
}

namespace detail
{
inline nlohmann::json base_meta(const char *builder, const ResonatorParams &p)
{
    return {{"artifact", "qfc"}, {"version", artifact_version}, {"builder", builder}, {"params", p}};
}

inline void require_grid(const LinearGrid &g, const char *what)
{
    if (g.count == 0 || !std::isfinite(g.min) || !std::isfinite(g.max))
        throw ConfigError(std::string("grid '") + what + "' needs count >= 1 and finite bounds");
}

inline std::vector<std::vector<double>> collect(std::vector<std::optional<std::vector<double>>> &&slots)
{
    std::vector<std::vector<double>> rows;
    rows.reserve(slots.size());
    for (auto &s : slots)
        if (s)
            rows.push_back(std::move(*s));
    return rows;
}
} // namespace detail

// One row per comb line mu in [-mu_max, mu_max].  The g2 column is dropped at
// zero pump, where the pair correlation is undefined.
inline SpectrumDataset comb_spectrum(const ResonatorParams &p, PumpRatio x, int mu_max, unsigned threads = 1)
{
    validate(p);
    if (mu_max < 0)
        throw ConfigError("comb sweep needs mu_max >= 0");

    const bool with_g2 = x.value() > 0.0;
    SpectrumDataset ds;
    ds.schema = {{"mu", "1"},   {"omega_line", "rad/s"}, {"delta_eff", "rad/s"}, {"n", "1"},
                 {"v_s", "dB"}, {"v_as", "dB"},          {"phi_opt", "rad"}};
    if (with_g2)
        ds.schema.push_back({"g2_si", "1"});

    const std::size_t count = 2 * static_cast<std::size_t>(mu_max) + 1;
    ds.rows = parallel_map(count, threads, [&](std::size_t i) {
        const int mu = static_cast<int>(i) - mu_max;
        const double delta = effective_detuning(p, x, mu);
        const SqueezeResult sq = squeeze(p, x, delta);
        std::vector<double> row{static_cast<double>(mu),
                                p.omega_p + p.d1 * mu,
                                delta,
                                photon_number(p, x, delta),
                                sq.v_s_db,
                                sq.v_as_db,
                                sq.phi_opt};
        if (with_g2)
            row.push_back(g2_joint(p, x, delta));
        return row;
    });

    ds.meta = detail::base_meta("comb_spectrum", p);
    ds.meta["sweep"] = {{"x", x.value()}, {"mu_max", mu_max}};
    if (auto onset = first_comb_mode(p, x))
        ds.meta["mu_root"] = onset->mu_real;
    else
        ds.meta["mu_root"] = nullptr;
    return ds;
}

// V(Delta, phi) in dB with the optimum-angle ridge phi_opt(Delta) alongside.
inline SpectrumDataset squeezing_map(const ResonatorParams &p, PumpRatio x, const LinearGrid &delta_grid,
                                     const LinearGrid &phi_grid, unsigned threads = 1)
{
    validate(p);
    detail::require_grid(delta_grid, "delta");
    detail::require_grid(phi_grid, "phi");

    SpectrumDataset ds;
    ds.schema = {{"delta_eff", "rad/s"}, {"phi_lo", "rad"}, {"v", "dB"}, {"phi_opt", "rad"}};
    const std::size_t n_phi = phi_grid.count;
    ds.rows = parallel_map(delta_grid.count * n_phi, threads, [&](std::size_t i) {
        const double delta = delta_grid.at(i / n_phi);
        const double phi = phi_grid.at(i % n_phi);
        return std::vector<double>{delta, phi, to_db(variance(p, x, delta, phi)), optimal_angle(p, x, delta)};
    });

    ds.meta = detail::base_meta("squeezing_map", p);
    ds.meta["sweep"] = {{"x", x.value()}, {"delta", delta_grid}, {"phi", phi_grid}};
    return ds;
}

// Raw JSI and JSI divided by the grid maximum (recorded as meta.normalization).
inline SpectrumDataset jsi_map(const ResonatorParams &p, PumpRatio x, const LinearGrid &delta_s_grid,
                               const LinearGrid &delta_i_grid, unsigned threads = 1)
{
    validate(p);
    detail::require_grid(delta_s_grid, "delta_s");
    detail::require_grid(delta_i_grid, "delta_i");

    const std::size_t n_i = delta_i_grid.count;
    const auto raw = parallel_map(delta_s_grid.count * n_i, threads, [&](std::size_t i) {
        return jsi(p, x, delta_s_grid.at(i / n_i), delta_i_grid.at(i % n_i));
    });
    const double peak = raw.empty() ? 0.0 : *std::max_element(raw.begin(), raw.end());

    SpectrumDataset ds;
    ds.schema = {{"delta_s", "rad/s"}, {"delta_i", "rad/s"}, {"jsi", "1"}, {"jsi_norm", "1"}};
    ds.rows.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        ds.rows.push_back({delta_s_grid.at(i / n_i), delta_i_grid.at(i % n_i), raw[i], peak > 0.0 ? raw[i] / peak : 0.0});

    ds.meta = detail::base_meta("jsi_map", p);
    ds.meta["sweep"] = {{"x", x.value()}, {"delta_s", delta_s_grid}, {"delta_i", delta_i_grid}};
    ds.meta["normalization"] = peak;
    return ds;
}

// g2 of the pair versus pump for a list of effective detunings, plus the
// single-mode value for reference.
inline SpectrumDataset g2_curve(const ResonatorParams &p, const LinearGrid &x_grid, const std::vector<double> &deltas,
                                unsigned threads = 1)
{
    validate(p);
    detail::require_grid(x_grid, "x");
    if (deltas.empty())
        throw ConfigError("g2 sweep needs at least one detuning");
    // validate the whole request before computing anything
    for (std::size_t i = 0; i < x_grid.count; ++i)
        if (PumpRatio::checked(x_grid.at(i)).value() == 0.0)
            throw UndefinedCorrelationError("g2 sweep includes x = 0, where the pair correlation is undefined");

    SpectrumDataset ds;
    ds.schema = {{"x", "1"}, {"delta_eff", "rad/s"}, {"g2_si", "1"}, {"g2_s", "1"}};
    const std::size_t n_d = deltas.size();
    ds.rows = parallel_map(x_grid.count * n_d, threads, [&](std::size_t i) {
        const PumpRatio x = PumpRatio::checked(x_grid.at(i / n_d));
        const double delta = deltas[i % n_d];
        return std::vector<double>{x.value(), delta, g2_joint(p, x, delta), g2_single()};
    });

    ds.meta = detail::base_meta("g2_curve", p);
    ds.meta["sweep"] = {{"x", x_grid}, {"deltas", deltas}};
    return ds;
}

// Curve identifiers of the threshold map.
enum class ThresholdCurve
{
    region_lower = 0,
    region_upper = 1,
    pump_stable_lower = 2,
    pump_unstable_middle = 3,
    pump_stable_upper = 4
};

// Long-format table over the bare pump detuning: threshold-region bounds of each
// mode 0..mu_max and the pump branches at input power p_in, both as
// intracavity photon numbers and as optical power via the transmission rate.
// Pump rows carry mu = -1.
inline SpectrumDataset threshold_map(const ResonatorParams &p, double p_in, const LinearGrid &delta_p0_grid, int mu_max,
                                     double transmission_rate, unsigned threads = 1)
{
    validate(p);
    detail::require_grid(delta_p0_grid, "delta_p0");
    if (mu_max < 0)
        throw ConfigError("threshold sweep needs mu_max >= 0");
    if (!(transmission_rate > 0.0))
        throw ConfigError("threshold map needs a transmission rate t > 0");

    auto to_power = [&](double photons) {
        return flux_to_power(intracavity_to_flux(photons, transmission_rate), p.omega_p);
    };

    const auto blocks = parallel_map(delta_p0_grid.count, threads, [&](std::size_t i) {
        const double delta_p0 = delta_p0_grid.at(i);
        std::vector<std::vector<double>> rows;
        for (int mu = 0; mu <= mu_max; ++mu)
        {
            if (auto region = threshold_amplitude_region(p, delta_p0, mu))
            {
                rows.push_back({delta_p0, static_cast<double>(ThresholdCurve::region_lower), static_cast<double>(mu),
                                region->lower, to_power(region->lower)});
                rows.push_back({delta_p0, static_cast<double>(ThresholdCurve::region_upper), static_cast<double>(mu),
                                region->upper, to_power(region->upper)});
            }
        }
        for (const PumpRoot &root : pump_steady_state(p, p_in, delta_p0).roots)
        {
            const auto curve = root.stability == Stability::stable_lower     ? ThresholdCurve::pump_stable_lower
                               : root.stability == Stability::unstable_middle ? ThresholdCurve::pump_unstable_middle
                                                                              : ThresholdCurve::pump_stable_upper;
            rows.push_back({delta_p0, static_cast<double>(curve), -1.0, root.photons, to_power(root.photons)});
        }
        return rows;
    });

    SpectrumDataset ds;
    ds.schema = {{"delta_p0", "rad/s"}, {"curve", "1"}, {"mu", "1"}, {"photons", "1"}, {"power", "W"}};
    for (const auto &block : blocks)
        ds.rows.insert(ds.rows.end(), block.begin(), block.end());

    ds.meta = detail::base_meta("threshold_map", p);
    ds.meta["sweep"] = {{"p_in", p_in}, {"delta_p0", delta_p0_grid}, {"mu_max", mu_max}, {"t", transmission_rate}};
    ds.meta["p_th"] = threshold_power(p);
    ds.meta["curves"] = {{"0", "threshold region lower bound"},
                         {"1", "threshold region upper bound"},
                         {"2", "pump stable-lower"},
                         {"3", "pump unstable-middle"},
                         {"4", "pump stable-upper"}};
    return ds;
}

// Regenerates a dataset from its meta record.  Extra meta keys (provenance
// notes added by the CLI) are ignored.
inline SpectrumDataset rebuild(const nlohmann::json &meta, unsigned threads = 1)
{
    const std::string builder = meta.at("builder");
    const ResonatorParams p = meta.at("params").get<ResonatorParams>();
    const auto &sweep = meta.at("sweep");

    if (builder == "comb_spectrum")
        return comb_spectrum(p, PumpRatio::checked(sweep.at("x")), sweep.at("mu_max"), threads);
    if (builder == "squeezing_map")
        return squeezing_map(p, PumpRatio::checked(sweep.at("x")), sweep.at("delta"), sweep.at("phi"), threads);
    if (builder == "jsi_map")
        return jsi_map(p, PumpRatio::checked(sweep.at("x")), sweep.at("delta_s"), sweep.at("delta_i"), threads);
    if (builder == "g2_curve")
        return g2_curve(p, sweep.at("x"), sweep.at("deltas").get<std::vector<double>>(), threads);
    if (builder == "threshold_map")
        return threshold_map(p, sweep.at("p_in"), sweep.at("delta_p0"), sweep.at("mu_max"), sweep.at("t"), threads);
    throw Error("unknown dataset builder '" + builder + "'");
}
} // namespace qfc
