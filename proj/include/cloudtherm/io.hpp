#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cloudtherm/series.hpp"

namespace cloudtherm {

/// Parse a `year,value` CSV (UTF-8, `#` comment lines allowed, 4-digit
/// integer year, decimal-literal value). Errors carry the file and line.
AnnualSeries load_series(const std::filesystem::path& path, const std::string& entity,
                         SeriesKind kind, const std::string& unit);

/// Write a series back in the same CSV schema, values rendered with 17
/// significant digits so a load/emit cycle round-trips exactly.
void save_series_csv(const AnnualSeries& series, const std::filesystem::path& path);

/// One entity's input bundle: at most one series per kind, paths resolved
/// relative to the manifest file.
struct DatasetManifest {
    struct Entry {
        SeriesKind kind;
        std::string unit;
        std::filesystem::path path;
    };

    std::string entity;
    std::vector<Entry> series;
    std::string notes;
    std::optional<double> pre_window_cumulative_revenue;

    static DatasetManifest load(const std::filesystem::path& path);

    bool has(SeriesKind kind) const;
    /// Load the series of the given kind; throws DataError naming the kind
    /// when the manifest lacks it.
    AnnualSeries load_kind(SeriesKind kind) const;
};

} // namespace cloudtherm
