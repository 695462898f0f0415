#include "cloudtherm/series.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cloudtherm {

std::string to_string(SeriesKind kind)
{
    switch (kind) {
    case SeriesKind::energy: return "energy";
    case SeriesKind::revenue: return "revenue";
    case SeriesKind::capex: return "capex";
    case SeriesKind::scope3: return "scope3";
    case SeriesKind::users: return "users";
    case SeriesKind::internet_energy: return "internet_energy";
    case SeriesKind::other: return "other";
    }
    return "other";
}

SeriesKind series_kind_from_string(const std::string& name)
{
    if (name == "energy") return SeriesKind::energy;
    if (name == "revenue") return SeriesKind::revenue;
    if (name == "capex") return SeriesKind::capex;
    if (name == "scope3") return SeriesKind::scope3;
    if (name == "users") return SeriesKind::users;
    if (name == "internet_energy") return SeriesKind::internet_energy;
    if (name == "other") return SeriesKind::other;
    throw DataError("unknown series kind: '" + name + "'");
}

namespace {

bool must_be_non_negative(SeriesKind kind)
{
    switch (kind) {
    case SeriesKind::energy:
    case SeriesKind::revenue:
    case SeriesKind::capex:
    case SeriesKind::users:
    case SeriesKind::internet_energy:
        return true;
    default:
        return false;
    }
}

// "MWh/yr" -> "MWh"; anything without a rate suffix gets "*yr".
std::string rate_to_stock_unit(const std::string& unit)
{
    const std::string suffix = "/yr";
    if (unit.size() > suffix.size() &&
        unit.compare(unit.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return unit.substr(0, unit.size() - suffix.size());
    }
    return unit + "*yr";
}

} // namespace

AnnualSeries::AnnualSeries(std::string entity, SeriesKind kind, std::string unit,
                           std::vector<YearValue> points)
    : entity_(std::move(entity)), kind_(kind), unit_(std::move(unit)),
      points_(std::move(points))
{
    if (unit_.empty())
        throw DataError("series '" + entity_ + "' (" + to_string(kind_) +
                        "): unit string must be non-empty");
    if (points_.empty())
        throw DataError("series '" + entity_ + "' (" + to_string(kind_) +
                        "): no observations");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.value))
            throw DataError("series '" + entity_ + "' (" + to_string(kind_) +
                            "): non-finite value at year " + std::to_string(p.year));
        if (must_be_non_negative(kind_) && p.value < 0.0)
            throw DataError("series '" + entity_ + "' (" + to_string(kind_) +
                            "): negative value at year " + std::to_string(p.year));
        if (i > 0 && p.year <= points_[i - 1].year)
            throw DataError("series '" + entity_ + "' (" + to_string(kind_) +
                            "): years must be strictly increasing (year " +
                            std::to_string(p.year) + ")");
    }
}

bool AnnualSeries::has_year(int year) const
{
    auto it = std::lower_bound(points_.begin(), points_.end(), year,
                               [](const YearValue& p, int y) { return p.year < y; });
    return it != points_.end() && it->year == year;
}

double AnnualSeries::value_at(int year) const
{
    auto it = std::lower_bound(points_.begin(), points_.end(), year,
                               [](const YearValue& p, int y) { return p.year < y; });
    if (it == points_.end() || it->year != year)
        throw DataError("series '" + entity_ + "' (" + to_string(kind_) +
                        "): no observation for year " + std::to_string(year));
    return it->value;
}

SeriesPair::SeriesPair(AnnualSeries x, AnnualSeries y)
    : x_(std::move(x)), y_(std::move(y))
{
    if (x_.size() != y_.size())
        throw AlignmentError("series pair: year sets differ in size");
    years_.reserve(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (x_.points()[i].year != y_.points()[i].year)
            throw AlignmentError("series pair: year sets differ");
        years_.push_back(x_.points()[i].year);
    }
    if (years_.empty())
        throw AlignmentError("series pair: empty after alignment");
}

AnnualSeries cumulative(const AnnualSeries& s, double initial, GapPolicy gaps)
{
    if (initial < 0.0)
        throw std::invalid_argument("cumulative: initial must be >= 0");

    std::vector<YearValue> filled;
    filled.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& p = s.points()[i];
        if (i > 0) {
            int gap = p.year - s.points()[i - 1].year;
            if (gap > 1) {
                if (gaps == GapPolicy::reject)
                    throw DataError("series '" + s.entity() + "' (" +
                                    to_string(s.kind()) + "): missing years between " +
                                    std::to_string(s.points()[i - 1].year) + " and " +
                                    std::to_string(p.year) +
                                    " (pass interpolate to fill linearly)");
                double v0 = s.points()[i - 1].value;
                double step = (p.value - v0) / gap;
                for (int k = 1; k < gap; ++k)
                    filled.push_back({s.points()[i - 1].year + k, v0 + step * k});
            }
        }
        filled.push_back(p);
    }

    std::vector<YearValue> out;
    out.reserve(filled.size());
    double running = initial;
    for (const auto& p : filled) {
        running += p.value;
        out.push_back({p.year, running});
    }
    return AnnualSeries(s.entity(), s.kind(), rate_to_stock_unit(s.unit()),
                        std::move(out));
}

AnnualSeries log_growth_rate(const AnnualSeries& s)
{
    if (s.size() < 2)
        throw std::invalid_argument("log_growth_rate: need at least 2 points");
    for (const auto& p : s.points())
        if (p.value <= 0.0)
            throw std::invalid_argument(
                "log_growth_rate: non-positive value at year " + std::to_string(p.year));

    std::vector<YearValue> out;
    out.reserve(s.size() - 1);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const auto& a = s.points()[i];
        const auto& b = s.points()[i + 1];
        out.push_back({a.year, (std::log(b.value) - std::log(a.value)) / (b.year - a.year)});
    }
    return AnnualSeries(s.entity(), SeriesKind::other, "1/yr", std::move(out));
}

SeriesPair align(const AnnualSeries& x, const AnnualSeries& y)
{
    std::vector<YearValue> xs, ys;
    for (const auto& p : x.points()) {
        if (y.has_year(p.year)) {
            xs.push_back(p);
            ys.push_back({p.year, y.value_at(p.year)});
        }
    }
    if (xs.size() < 2)
        throw AlignmentError("align: series '" + x.entity() + "' (" +
                             to_string(x.kind()) + ") and '" + y.entity() + "' (" +
                             to_string(y.kind()) + ") share fewer than 2 years");
    return SeriesPair(AnnualSeries(x.entity(), x.kind(), x.unit(), std::move(xs)),
                      AnnualSeries(y.entity(), y.kind(), y.unit(), std::move(ys)));
}

} // namespace cloudtherm
