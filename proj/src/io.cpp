#include "cloudtherm/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cloudtherm/error.hpp"

namespace cloudtherm {

namespace {

std::string loc(const std::filesystem::path& path, int line)
{
    return path.string() + ":" + std::to_string(line);
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

AnnualSeries load_series(const std::filesystem::path& path, const std::string& entity,
                         SeriesKind kind, const std::string& unit)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open series file: " + path.string());

    std::vector<YearValue> points;
    std::set<int> seen;
    std::string raw;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        if (!header_seen) {
            if (line != "year,value")
                throw DataError(loc(path, line_no) +
                                ": expected header 'year,value', got '" +
                                std::string(line) + "'");
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string_view::npos)
            throw DataError(loc(path, line_no) + ": malformed row '" +
                            std::string(line) + "' (expected year,value)");
        const std::string_view year_sv = trim(line.substr(0, comma));
        const std::string_view value_sv = trim(line.substr(comma + 1));

        int year = 0;
        auto [yp, yec] = std::from_chars(year_sv.data(), year_sv.data() + year_sv.size(), year);
        if (yec != std::errc{} || yp != year_sv.data() + year_sv.size() ||
            year < 1000 || year > 9999)
            throw DataError(loc(path, line_no) + ": invalid year '" +
                            std::string(year_sv) + "' (expected 4-digit integer)");
        if (!seen.insert(year).second)
            throw DataError(loc(path, line_no) + ": duplicate year " +
                            std::to_string(year));

        double value = 0.0;
        const std::string value_str(value_sv);
        char* end = nullptr;
        value = std::strtod(value_str.c_str(), &end);
        if (value_str.empty() || end != value_str.c_str() + value_str.size())
            throw DataError(loc(path, line_no) + ": invalid value '" + value_str + "'");
        if (!std::isfinite(value))
            throw DataError(loc(path, line_no) + ": non-finite value '" + value_str + "'");

        points.push_back({year, value});
    }
    if (!header_seen)
        throw DataError(path.string() + ": missing 'year,value' header");

    try {
        return AnnualSeries(entity, kind, unit, std::move(points));
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void save_series_csv(const AnnualSeries& series, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot write series file: " + path.string());
    out << "year,value\n";
    char buf[64];
    for (const auto& p : series.points()) {
        std::snprintf(buf, sizeof(buf), "%.17g", p.value);
        out << p.year << ',' << buf << '\n';
    }
    if (!out)
        throw IoError("write failed: " + path.string());
}

bool DatasetManifest::has(SeriesKind kind) const
{
    for (const auto& e : series)
        if (e.kind == kind)
            return true;
    return false;
}

AnnualSeries DatasetManifest::load_kind(SeriesKind kind) const
{
    for (const auto& e : series)
        if (e.kind == kind)
            return load_series(e.path, entity, e.kind, e.unit);
    throw DataError("manifest for '" + entity + "' has no " + to_string(kind) +
                    " series");
}

DatasetManifest DatasetManifest::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open manifest: " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError("manifest " + path.string() + ": " + e.what());
    }

    DatasetManifest m;
    try {
        m.entity = doc.at("entity").get<std::string>();
        m.notes = doc.value("notes", std::string{});
        if (doc.contains("pre_window_cumulative_revenue"))
            m.pre_window_cumulative_revenue =
                doc.at("pre_window_cumulative_revenue").get<double>();
        for (const auto& s : doc.at("series")) {
            Entry e;
            e.kind = series_kind_from_string(s.at("kind").get<std::string>());
            e.unit = s.at("unit").get<std::string>();
            std::filesystem::path p = s.at("path").get<std::string>();
            e.path = p.is_absolute() ? p : path.parent_path() / p;
            m.series.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError("manifest " + path.string() + ": " + e.what());
    }

    std::set<SeriesKind> kinds;
    for (const auto& e : m.series) {
        if (!kinds.insert(e.kind).second)
            throw DataError("manifest " + path.string() + ": duplicate series kind '" +
                            to_string(e.kind) + "' for entity '" + m.entity + "'");
        std::ifstream probe(e.path);
        if (!probe)
            throw DataError("manifest " + path.string() + ": series file not readable: " +
                            e.path.string() + " (" + to_string(e.kind) + ")");
    }
    return m;
}

} // namespace cloudtherm
