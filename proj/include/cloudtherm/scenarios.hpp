#pragma once

#include <optional>
#include <vector>

#include "cloudtherm/calibrate.hpp"
#include "cloudtherm/series.hpp"

namespace cloudtherm {

struct YearRange {
    int from = 0;
    int to = 0;
};

/// Client-side energy assumptions. The per-device figure may be given either
/// directly (Wh per user per day) or as watts x hours, which multiply to the
/// same quantity.
struct ClientEnergyParams {
    double device_wh_per_user_day = 2.0;
    double charger_efficiency = 1.0; // 1 = no adjustment
    double internet_share = 0.10;
    double days_per_year = 365.0;
    std::optional<double> device_watts;
    std::optional<double> device_hours_per_day;

    double effective_wh_per_user_day() const;
    void validate() const;
};

/// Per-year energy components in MWh; total is the exact sum.
struct EnergyBreakdown {
    struct Row {
        int year;
        double datacenter;
        double device;
        double network;
        double total;
    };
    std::vector<Row> rows;
};

/// Model-estimated energy for years without observations: A_hat(t) = alpha_hat
/// * C(t), with C the cumulative revenue from the earliest record (seeded by
/// historical_revenue for pre-record history). Output is an estimate, not an
/// observation; the report layer flags it as such.
AnnualSeries backcast_energy(const AnnualSeries& revenue_full_history,
                             double alpha_hat, YearRange window,
                             double historical_revenue = 0.0);

/// Device charging energy: users * Wh/day * days / charger_efficiency, in MWh/yr.
AnnualSeries device_energy(const AnnualSeries& users, const ClientEnergyParams& params);

/// Attributed share of total internet energy, in MWh/yr.
AnnualSeries network_energy(const AnnualSeries& internet_energy,
                            const ClientEnergyParams& params);

/// Device plus attributed network energy (network 0 when no internet series).
AnnualSeries client_energy(const AnnualSeries& users,
                           const AnnualSeries* internet_energy,
                           const ClientEnergyParams& params);

/// Per-year datacenter + device + network breakdown over the common years.
EnergyBreakdown total_system_energy(const AnnualSeries& datacenter,
                                    const AnnualSeries& users,
                                    const AnnualSeries* internet_energy,
                                    const ClientEnergyParams& params);

} // namespace cloudtherm
