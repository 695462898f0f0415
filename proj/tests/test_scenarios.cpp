#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cloudtherm/calibrate.hpp"
#include "cloudtherm/scenarios.hpp"

using namespace cloudtherm;

namespace {

AnnualSeries series(SeriesKind kind, const std::vector<double>& values,
                    int first_year, const std::string& unit)
{
    std::vector<YearValue> pts;
    for (std::size_t i = 0; i < values.size(); ++i)
        pts.push_back({first_year + static_cast<int>(i), values[i]});
    return AnnualSeries("test", kind, unit, std::move(pts));
}

} // namespace

TEST_CASE("backcast round trip")
{
    // generate energy as A = alpha * C, fit, back-cast over the window
    const double alpha = 2.5e-7;
    std::vector<double> revenue{1e9, 1.2e9, 1.5e9, 1.9e9, 2.4e9, 3e9};
    const double historical = 5e9;
    auto rev = series(SeriesKind::revenue, revenue, 2016, "USD/yr");
    auto cum = cumulative(rev, historical);
    std::vector<double> energy;
    for (const auto& p : cum.points())
        energy.push_back(alpha * p.value);
    auto en = series(SeriesKind::energy, energy, 2016, "MWh/yr");

    auto af = fit_alpha(en, rev, historical);
    auto est = backcast_energy(rev, af.fit.slope, {2016, 2021}, historical);
    REQUIRE(est.size() == en.size());
    for (std::size_t i = 0; i < est.size(); ++i)
        CHECK(std::abs(est.points()[i].value - en.points()[i].value) /
                  en.points()[i].value < 1e-9);

    // discrepancy on overlap equals the fit residual
    std::vector<double> noisy = energy;
    noisy[2] *= 1.1;
    auto noisy_en = series(SeriesKind::energy, noisy, 2016, "MWh/yr");
    auto af2 = fit_alpha(noisy_en, rev, historical);
    auto est2 = backcast_energy(rev, af2.fit.slope, {2016, 2021}, historical);
    for (std::size_t i = 0; i < est2.size(); ++i)
        CHECK(noisy_en.points()[i].value - est2.points()[i].value ==
              doctest::Approx(af2.fit.residuals[i]).epsilon(1e-9));
}

TEST_CASE("backcast edge cases")
{
    auto rev = series(SeriesKind::revenue, {0.0, 0.0, 0.0}, 2016, "USD/yr");
    auto est = backcast_energy(rev, 1e-6, {2016, 2018});
    for (const auto& p : est.points())
        CHECK(p.value == 0.0);

    CHECK_THROWS_AS(backcast_energy(rev, 1e-6, {2010, 2015}), DataError);
    CHECK_THROWS_AS(backcast_energy(rev, 0.0, {2016, 2018}), std::invalid_argument);
}

TEST_CASE("client device energy arithmetic")
{
    auto users = series(SeriesKind::users, {1e9}, 2020, "persons");
    ClientEnergyParams p; // 2 Wh/day, eff 1.0
    auto dev = device_energy(users, p);
    CHECK(dev.points()[0].value == doctest::Approx(730000.0).epsilon(1e-12));
    CHECK(dev.unit() == "MWh/yr");

    // halving charger efficiency doubles device energy
    ClientEnergyParams half = p;
    half.charger_efficiency = 0.5;
    CHECK(device_energy(users, half).points()[0].value ==
          doctest::Approx(2.0 * 730000.0));

    auto none = device_energy(series(SeriesKind::users, {0.0}, 2020, "persons"), p);
    CHECK(none.points()[0].value == 0.0);

    // watts x hours route multiplies to the same Wh/day figure
    ClientEnergyParams wh = p;
    wh.device_watts = 1.0;
    wh.device_hours_per_day = 2.0;
    CHECK(device_energy(users, wh).points()[0].value ==
          doctest::Approx(730000.0));

    CHECK_THROWS_AS(device_energy(series(SeriesKind::energy, {1.0}, 2020, "MWh/yr"), p),
                    std::invalid_argument);
}

TEST_CASE("client energy linearity")
{
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.5, 5.0);
    auto users = series(SeriesKind::users, {1e8, 2e8, 3e8}, 2016, "persons");
    ClientEnergyParams p;
    auto base = device_energy(users, p);
    for (int i = 0; i < 20; ++i) {
        const double k = u(rng);
        std::vector<double> scaled_users;
        for (const auto& pt : users.points())
            scaled_users.push_back(k * pt.value);
        auto scaled = device_energy(
            series(SeriesKind::users, scaled_users, 2016, "persons"), p);
        for (std::size_t j = 0; j < base.size(); ++j)
            CHECK(scaled.points()[j].value ==
                  doctest::Approx(k * base.points()[j].value).epsilon(1e-12));

        ClientEnergyParams pk = p;
        pk.device_wh_per_user_day *= k;
        auto scaled2 = device_energy(users, pk);
        for (std::size_t j = 0; j < base.size(); ++j)
            CHECK(scaled2.points()[j].value ==
                  doctest::Approx(k * base.points()[j].value).epsilon(1e-12));
    }
}

TEST_CASE("total_system_energy breakdown")
{
    ClientEnergyParams p;
    auto dc = series(SeriesKind::energy, {100.0, 200.0}, 2020, "MWh/yr");
    // users chosen so device energy = 50 MWh/yr: u * 2 * 365 * 1e-6 = 50
    const double u50 = 50.0 / (2.0 * 365.0 * 1e-6);
    auto users = series(SeriesKind::users, {u50, u50}, 2020, "persons");
    auto inet = series(SeriesKind::internet_energy, {100.0, 100.0}, 2020, "MWh/yr");

    auto bd = total_system_energy(dc, users, &inet, p);
    REQUIRE(bd.rows.size() == 2);
    CHECK(bd.rows[0].datacenter == 100.0);
    CHECK(bd.rows[0].device == doctest::Approx(50.0));
    CHECK(bd.rows[0].network == doctest::Approx(10.0)); // 10% share
    CHECK(bd.rows[0].total ==
          bd.rows[0].datacenter + bd.rows[0].device + bd.rows[0].network);

    // no internet series: network 0, total = dc + device
    auto bd2 = total_system_energy(dc, users, nullptr, p);
    CHECK(bd2.rows[0].network == 0.0);
    CHECK(bd2.rows[0].total == doctest::Approx(150.0));

    // doubling device Wh/day doubles only the device column
    ClientEnergyParams p2 = p;
    p2.device_wh_per_user_day *= 2.0;
    auto bd3 = total_system_energy(dc, users, &inet, p2);
    CHECK(bd3.rows[0].device == doctest::Approx(2.0 * bd.rows[0].device));
    CHECK(bd3.rows[0].datacenter == bd.rows[0].datacenter);
    CHECK(bd3.rows[0].network == bd.rows[0].network);
}

TEST_CASE("client energy combines device and network")
{
    ClientEnergyParams p;
    auto users = series(SeriesKind::users, {1e9, 1e9}, 2020, "persons");
    auto inet = series(SeriesKind::internet_energy, {5e7, 5e7}, 2020, "MWh/yr");
    auto total = client_energy(users, &inet, p);
    CHECK(total.points()[0].value == doctest::Approx(730000.0 + 5e6));
    auto dev_only = client_energy(users, nullptr, p);
    CHECK(dev_only.points()[0].value == doctest::Approx(730000.0));
}

TEST_CASE("ClientEnergyParams validation")
{
    ClientEnergyParams p;
    p.charger_efficiency = 1.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ClientEnergyParams{};
    p.internet_share = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ClientEnergyParams{};
    p.device_watts = 1.0; // hours missing
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
