#include "cloudtherm/scenarios.hpp"

#include <cmath>
#include <stdexcept>

namespace cloudtherm {

namespace {
constexpr double kWhToMwh = 1e-6;
}

double ClientEnergyParams::effective_wh_per_user_day() const
{
    if (device_watts && device_hours_per_day)
        return *device_watts * *device_hours_per_day;
    return device_wh_per_user_day;
}

void ClientEnergyParams::validate() const
{
    if (!(effective_wh_per_user_day() > 0.0))
        throw std::invalid_argument("ClientEnergyParams: device energy must be > 0");
    if (!(charger_efficiency > 0.0) || charger_efficiency > 1.0)
        throw std::invalid_argument("ClientEnergyParams: charger_efficiency must be in (0,1]");
    if (!(internet_share > 0.0) || internet_share > 1.0)
        throw std::invalid_argument("ClientEnergyParams: internet_share must be in (0,1]");
    if (!(days_per_year > 0.0))
        throw std::invalid_argument("ClientEnergyParams: days_per_year must be > 0");
    if (device_watts.has_value() != device_hours_per_day.has_value())
        throw std::invalid_argument(
            "ClientEnergyParams: device_watts and device_hours_per_day go together");
}

AnnualSeries backcast_energy(const AnnualSeries& revenue, double alpha_hat,
                             YearRange window, double historical_revenue)
{
    if (!(alpha_hat > 0.0))
        throw std::invalid_argument("backcast_energy: alpha_hat must be > 0");
    if (window.from > window.to)
        throw std::invalid_argument("backcast_energy: empty window");
    if (window.from < revenue.first_year() || window.to > revenue.last_year())
        throw DataError("backcast_energy: window " + std::to_string(window.from) + "-" +
                        std::to_string(window.to) + " outside revenue coverage " +
                        std::to_string(revenue.first_year()) + "-" +
                        std::to_string(revenue.last_year()));

    AnnualSeries cum = cumulative(revenue, historical_revenue);
    std::vector<YearValue> pts;
    for (const auto& p : cum.points())
        if (p.year >= window.from && p.year <= window.to)
            pts.push_back({p.year, alpha_hat * p.value});
    return AnnualSeries(revenue.entity(), SeriesKind::energy, "MWh/yr", std::move(pts));
}

AnnualSeries device_energy(const AnnualSeries& users, const ClientEnergyParams& params)
{
    params.validate();
    if (users.kind() != SeriesKind::users)
        throw std::invalid_argument("device_energy: expected a users series, got " +
                                    to_string(users.kind()));
    const double mwh_per_user =
        params.effective_wh_per_user_day() * params.days_per_year * kWhToMwh /
        params.charger_efficiency;
    std::vector<YearValue> pts;
    pts.reserve(users.size());
    for (const auto& p : users.points())
        pts.push_back({p.year, p.value * mwh_per_user});
    return AnnualSeries(users.entity(), SeriesKind::energy, "MWh/yr", std::move(pts));
}

AnnualSeries network_energy(const AnnualSeries& internet_energy,
                            const ClientEnergyParams& params)
{
    params.validate();
    std::vector<YearValue> pts;
    pts.reserve(internet_energy.size());
    for (const auto& p : internet_energy.points())
        pts.push_back({p.year, params.internet_share * p.value});
    return AnnualSeries(internet_energy.entity(), SeriesKind::energy,
                        internet_energy.unit(), std::move(pts));
}

AnnualSeries client_energy(const AnnualSeries& users,
                           const AnnualSeries* internet_energy,
                           const ClientEnergyParams& params)
{
    AnnualSeries device = device_energy(users, params);
    if (!internet_energy)
        return device;
    AnnualSeries network = network_energy(*internet_energy, params);
    std::vector<YearValue> pts;
    for (const auto& p : device.points())
        if (network.has_year(p.year))
            pts.push_back({p.year, p.value + network.value_at(p.year)});
    if (pts.empty())
        throw AlignmentError("client_energy: no common years across components");
    return AnnualSeries(users.entity(), SeriesKind::energy, "MWh/yr", std::move(pts));
}

EnergyBreakdown total_system_energy(const AnnualSeries& datacenter,
                                    const AnnualSeries& users,
                                    const AnnualSeries* internet_energy,
                                    const ClientEnergyParams& params)
{
    AnnualSeries device = device_energy(users, params);

    EnergyBreakdown out;
    for (const auto& p : datacenter.points()) {
        const int year = p.year;
        if (!device.has_year(year))
            continue;
        if (internet_energy && !internet_energy->has_year(year))
            continue;
        EnergyBreakdown::Row row;
        row.year = year;
        row.datacenter = p.value;
        row.device = device.value_at(year);
        row.network =
            internet_energy ? params.internet_share * internet_energy->value_at(year) : 0.0;
        row.total = row.datacenter + row.device + row.network;
        out.rows.push_back(row);
    }
    if (out.rows.empty())
        throw AlignmentError("total_system_energy: no common years across components");
    return out;
}

} // namespace cloudtherm
