#pragma once

#include <string>
#include <vector>

#include "cloudtherm/error.hpp"

namespace cloudtherm {

enum class SeriesKind { energy, revenue, capex, scope3, users, internet_energy, other };

std::string to_string(SeriesKind kind);
SeriesKind series_kind_from_string(const std::string& name);

struct YearValue {
    int year;
    double value;
};

/// Ordered annual observations with a unit and entity label. Immutable
/// after construction; invariants (strictly increasing years, finite
/// values, non-negativity for physical kinds) are checked in the ctor.
class AnnualSeries {
public:
    AnnualSeries(std::string entity, SeriesKind kind, std::string unit,
                 std::vector<YearValue> points);

    const std::string& entity() const { return entity_; }
    SeriesKind kind() const { return kind_; }
    const std::string& unit() const { return unit_; }
    const std::vector<YearValue>& points() const { return points_; }

    std::size_t size() const { return points_.size(); }
    int first_year() const { return points_.front().year; }
    int last_year() const { return points_.back().year; }

    bool has_year(int year) const;
    double value_at(int year) const; // throws DataError if absent

private:
    std::string entity_;
    SeriesKind kind_;
    std::string unit_;
    std::vector<YearValue> points_;
};

/// Two series restricted to an identical, non-empty set of common years.
class SeriesPair {
public:
    SeriesPair(AnnualSeries x, AnnualSeries y);

    const AnnualSeries& x() const { return x_; }
    const AnnualSeries& y() const { return y_; }
    const std::vector<int>& years() const { return years_; }
    std::size_t size() const { return years_.size(); }

private:
    AnnualSeries x_;
    AnnualSeries y_;
    std::vector<int> years_;
};

enum class GapPolicy { reject, interpolate };

/// Left-closed running sum of yearly aggregates: out[k] = initial + sum_{i<=k} s[i].
/// The unit is converted from a rate to a stock ("USD/yr" -> "USD").
/// Interior year gaps are rejected unless GapPolicy::interpolate is given,
/// in which case missing years are filled linearly before summing.
AnnualSeries cumulative(const AnnualSeries& s, double initial,
                        GapPolicy gaps = GapPolicy::reject);

/// Forward-difference log growth: out[k] = (ln s[k+1] - ln s[k]) / (year gap).
/// One fewer point than the input; unit 1/yr. Requires strictly positive values.
AnnualSeries log_growth_rate(const AnnualSeries& s);

/// Restrict both series to their common years (order preserved).
/// Throws AlignmentError when fewer than 2 years are shared.
SeriesPair align(const AnnualSeries& x, const AnnualSeries& y);

} // namespace cloudtherm
