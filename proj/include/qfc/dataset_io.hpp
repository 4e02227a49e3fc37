#pragma once

// CSV / JSON emission of SpectrumDataset.  CSV headers read "name [unit]" and
// numbers use the shortest decimal form that round-trips; the meta record goes
// to a sidecar <stem>.meta.json.  JSON embeds schema, rows and meta.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "json.hpp"

#include "qfc/config.hpp"
#include "qfc/errors.hpp"
#include "qfc/spectra.hpp"

namespace qfc
{
inline std::string format_number(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        throw Error("number formatting failed");
    return std::string(buf, ptr);
}

inline void check_finite(const SpectrumDataset &ds)
{
    for (std::size_t r = 0; r < ds.rows.size(); ++r)
    {
        if (ds.rows[r].size() != ds.schema.size())
            throw Error("dataset row " + std::to_string(r) + " has " + std::to_string(ds.rows[r].size()) +
                        " entries, schema has " + std::to_string(ds.schema.size()));
        for (double v : ds.rows[r])
            if (!std::isfinite(v))
                throw Error("dataset row " + std::to_string(r) + " contains a non-finite value");
    }
}

inline std::string to_csv(const SpectrumDataset &ds)
{
    check_finite(ds);
    std::string out;
    for (std::size_t c = 0; c < ds.schema.size(); ++c)
    {
        if (c)
            out += ',';
        out += ds.schema[c].name + " [" + ds.schema[c].unit + "]";
    }
    out += '\n';
    for (const auto &row : ds.rows)
    {
        for (std::size_t c = 0; c < row.size(); ++c)
        {
            if (c)
                out += ',';
            out += format_number(row[c]);
        }
        out += '\n';
    }
    return out;
}

inline nlohmann::json to_json_document(const SpectrumDataset &ds)
{
    check_finite(ds);
    nlohmann::json schema = nlohmann::json::array();
    for (const auto &col : ds.schema)
        schema.push_back({{"name", col.name}, {"unit", col.unit}});
    return {{"schema", schema}, {"rows", ds.rows}, {"meta", ds.meta}};
}

inline SpectrumDataset from_json_document(const nlohmann::json &doc)
{
    SpectrumDataset ds;
    for (const auto &col : doc.at("schema"))
        ds.schema.push_back({col.at("name"), col.at("unit")});
    ds.rows = doc.at("rows").get<std::vector<std::vector<double>>>();
    ds.meta = doc.at("meta");
    return ds;
}

inline std::filesystem::path sidecar_path(const std::filesystem::path &path)
{
    std::filesystem::path meta = path;
    meta.replace_extension(".meta.json");
    return meta;
}

namespace detail
{
inline void write_text(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open '" + path.string() + "' for writing");
    out << text;
    out.close();
    if (!out)
        throw Error("failed writing '" + path.string() + "'");
}
} // namespace detail

inline void write_dataset(const SpectrumDataset &ds, const std::filesystem::path &path, OutputFormat format)
{
    if (format == OutputFormat::json)
    {
        detail::write_text(path, to_json_document(ds).dump(2) + "\n");
        return;
    }
    const std::string csv = to_csv(ds);
    detail::write_text(path, csv);
    detail::write_text(sidecar_path(path), ds.meta.dump(2) + "\n");
}

inline SpectrumDataset read_json_dataset(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot read dataset '" + path.string() + "'");
    try
    {
        return from_json_document(nlohmann::json::parse(in));
    }
    catch (const nlohmann::json::exception &e)
    {
        throw Error("malformed dataset '" + path.string() + "': " + e.what());
    }
}
} // namespace qfc
