// qfc: steady-state quantum frequency comb datasets from a run configuration.
//
//   qfc threshold|comb|squeeze|g2|jsi --config <file> [--out <file>]
//       [--format csv|json] [--threads N]
//
// Exit codes: 0 success, 1 I/O or internal error, 2 configuration error,
// 3 validity error (e.g. pump above the linearization bound), 4 numerical
// singularity.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "qfc/qfc.hpp"

namespace
{
enum ExitCode
{
    exit_ok = 0,
    exit_io = 1,
    exit_config = 2,
    exit_validity = 3,
    exit_singular = 4
};

struct Options
{
    std::string command;
    std::string config;
    std::string out;
    std::string format;
    unsigned threads = 1;
};

template <class T>
const T &need(const std::optional<T> &value, const std::string &what)
{
    if (!value)
        throw qfc::ConfigError("missing " + what);
    return *value;
}

qfc::PumpRatio pump_ratio(const qfc::RunConfig &cfg)
{
    return qfc::normalize_pump(need(cfg.pump, "[pump] block (p_in or p_n)"), cfg.resonator);
}

qfc::SpectrumDataset build(const Options &opt, const qfc::RunConfig &cfg)
{
    const auto &p = cfg.resonator;
    const auto &s = cfg.sweep;

    if (opt.command == "threshold")
    {
        // validity gate first, also for the classical map
        pump_ratio(cfg);
        const double p_in = qfc::input_power(*cfg.pump, p);
        const double t = need(cfg.transmission_rate, "[conversion] t (or a [geometry] block for the default)");
        return qfc::threshold_map(p, p_in, need(s.delta_p0, "[sweep] delta_p0_min/max/count"),
                                  need(s.mu_max, "[sweep] mu_max"), t, opt.threads);
    }
    if (opt.command == "comb")
        return qfc::comb_spectrum(p, pump_ratio(cfg), need(s.mu_max, "[sweep] mu_max"), opt.threads);
    if (opt.command == "squeeze")
    {
        const qfc::LinearGrid phi = s.phi.value_or(qfc::LinearGrid{0.0, qfc::constants::pi, 181});
        return qfc::squeezing_map(p, pump_ratio(cfg), need(s.delta, "[sweep] delta_min/max/count"), phi,
                                  opt.threads);
    }
    if (opt.command == "g2")
    {
        auto ds = qfc::g2_curve(p, need(s.x, "[sweep] x_min/max/count"), s.deltas.value_or(std::vector<double>{0.0}),
                                opt.threads);
        const auto col = ds.column("g2_si");
        const bool huge = std::any_of(ds.rows.begin(), ds.rows.end(), [&](const auto &r) { return r[col] > 1e6; });
        if (huge)
            std::cerr << "note: g2_si exceeds 1e6 at low pump; the pair correlation diverges as x -> 0\n";
        return ds;
    }
    if (opt.command == "jsi")
        return qfc::jsi_map(p, pump_ratio(cfg), need(s.delta_s, "[sweep] delta_s_min/max/count"),
                            need(s.delta_i, "[sweep] delta_i_min/max/count"), opt.threads);
    throw qfc::ConfigError("unknown command '" + opt.command + "'");
}

int run(const Options &opt)
{
    const qfc::RunConfig cfg = qfc::load_config(opt.config);

    std::string out = opt.out.empty() ? cfg.output.path.value_or("") : opt.out;
    qfc::OutputFormat format = cfg.output.format.value_or(qfc::OutputFormat::csv);
    if (!opt.format.empty())
        format = opt.format == "json" ? qfc::OutputFormat::json : qfc::OutputFormat::csv;
    else if (!cfg.output.format && std::filesystem::path(out).extension() == ".json")
        format = qfc::OutputFormat::json;

    qfc::SpectrumDataset ds = build(opt, cfg);
    ds.meta["t_provenance"] = cfg.t_provenance;
    if (cfg.transmission_rate)
        ds.meta["transmission_rate"] = *cfg.transmission_rate;
    ds.meta["warnings"] = cfg.warnings;
    for (const auto &w : cfg.warnings)
        std::cerr << "warning: " << w << "\n";

    if (out.empty() || out == "-")
    {
        if (format == qfc::OutputFormat::json)
            std::cout << qfc::to_json_document(ds).dump(2) << "\n";
        else
            std::cout << qfc::to_csv(ds);
    }
    else
    {
        qfc::write_dataset(ds, out, format);
    }
    return exit_ok;
}
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Steady-state quantum frequency comb simulator"};
    app.require_subcommand(1, 1);

    Options opt;
    for (const char *name : {"threshold", "comb", "squeeze", "g2", "jsi"})
    {
        static const std::map<std::string, std::string> help{
            {"threshold", "classical threshold regions and pump branches versus pump detuning"},
            {"comb", "photon number, squeezing and g2 for every comb line"},
            {"squeeze", "quadrature variance map over detuning and local-oscillator phase"},
            {"g2", "signal/idler second-order correlation versus pump"},
            {"jsi", "joint spectral intensity over signal/idler detunings"}};
        CLI::App *sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--config", opt.config, "run configuration file")->required();
        sub->add_option("--out", opt.out, "output file (default: stdout)");
        sub->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::Range(1u, 1024u));
        sub->callback([&opt, name] { opt.command = name; });
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        if (argc > 1 && argv[1][0] != '-' && !app.get_subcommand_no_throw(argv[1]))
            std::cerr << "unknown command '" << argv[1] << "' (expected threshold, comb, squeeze, g2 or jsi)\n";
        app.exit(e);
        return exit_config;
    }

    try
    {
        return run(opt);
    }
    catch (const qfc::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const qfc::ValidityError &e)
    {
        std::cerr << "validity error: " << e.what() << "\n";
        return exit_validity;
    }
    catch (const qfc::SingularityError &e)
    {
        std::cerr << "numerical singularity: " << e.what() << "\n";
        return exit_singular;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
}
