// Command-line front end: fit / forecast / backcast / client-energy /
// microsim / validate / report over manifest-described annual datasets.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cloudtherm/microsim.hpp"
#include "cloudtherm/pipeline.hpp"
#include "cloudtherm/version.hpp"

namespace {

// exit codes: 0 ok, 2 usage (CLI11), 3 data/validation, 4 io, 5 fit/numeric
constexpr int kExitData = 3;
constexpr int kExitIo = 4;
constexpr int kExitFit = 5;

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void print_fit_summary(const cloudtherm::Report& report)
{
    for (const auto& [name, nf] : report.fits) {
        std::cout << name << ": slope=" << fmt(nf.fit.slope)
                  << " intercept=" << fmt(nf.fit.intercept)
                  << " R2=" << fmt(nf.fit.r_squared) << " n=" << nf.fit.n
                  << (nf.flagged ? "  [flagged: R2 < 0.9]" : "") << "\n";
    }
    std::cout << "params: alpha=" << fmt(report.params.alpha)
              << " epsilon=" << fmt(report.params.epsilon)
              << " eta=" << fmt(report.params.eta) << "\n";
}

cloudtherm::PipelineConfig load_config(const std::string& path)
{
    if (path.empty())
        return {};
    return cloudtherm::PipelineConfig::load(path);
}

} // namespace

int main(int argc, char** argv)
{
    using namespace cloudtherm;

    CLI::App app{"Thermodynamic growth model for cloud systems: calibration, "
                 "simulation and energy accounting over annual data"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    std::string manifest_path, config_path, outdir;

    auto add_manifest = [&](CLI::App* sub, bool need_out) {
        sub->add_option("-m,--manifest", manifest_path, "dataset manifest (JSON)")
            ->required();
        auto* o = sub->add_option("-o,--outdir", outdir, "output directory");
        if (need_out)
            o->required();
    };

    auto* fit_cmd = app.add_subcommand("fit", "calibrate alpha, eta and size proxies");
    add_manifest(fit_cmd, false);

    auto* report_cmd = app.add_subcommand(
        "report", "full pipeline: fits plus configured analyses, emitted to files");
    add_manifest(report_cmd, true);
    report_cmd->add_option("-c,--config", config_path, "pipeline config (JSON)");

    auto* forecast_cmd = app.add_subcommand("forecast", "simulate forward from the fit");
    add_manifest(forecast_cmd, true);
    double horizon = 10.0, dt = 0.01;
    std::string method = "rk4";
    std::optional<double> reservoir;
    forecast_cmd->add_option("--horizon", horizon, "years to simulate");
    forecast_cmd->add_option("--dt", dt, "integration step (years)");
    forecast_cmd->add_option("--method", method, "euler|rk4|closed_form");
    forecast_cmd->add_option("--reservoir", reservoir,
                             "finite reservoir capacity (MWh cumulative)");

    auto* backcast_cmd = app.add_subcommand(
        "backcast", "estimate pre-observation energy from revenue history");
    add_manifest(backcast_cmd, true);
    int bc_from = 0, bc_to = 0;
    backcast_cmd->add_option("--from", bc_from, "first year")->required();
    backcast_cmd->add_option("--to", bc_to, "last year")->required();

    auto* client_cmd = app.add_subcommand(
        "client-energy", "aggregate datacenter + device + network energy");
    add_manifest(client_cmd, true);
    ClientEnergyParams cep;
    client_cmd->add_option("--wh-per-day", cep.device_wh_per_user_day,
                           "device watt-hours per user per day");
    client_cmd->add_option("--charger-efficiency", cep.charger_efficiency,
                           "charger efficiency in (0,1]");
    client_cmd->add_option("--internet-share", cep.internet_share,
                           "share of total internet energy attributed");

    auto* micro_cmd = app.add_subcommand("microsim", "discrete-ensemble simulation");
    MicroParams mp;
    MicroState ms0;
    ms0.n_system = 1e4;
    ms0.n_reservoir = 100.0;
    double micro_horizon = 50.0;
    std::string micro_out;
    std::optional<std::uint64_t> seed;
    micro_cmd->add_option("--alpha", mp.alpha, "conductivity")->required();
    micro_cmd->add_option("--epsilon", mp.epsilon, "efficiency")->required();
    micro_cmd->add_option("--ns0", ms0.n_system, "initial system particle count");
    micro_cmd->add_option("--nr0", ms0.n_reservoir, "reservoir particle count");
    micro_cmd->add_option("--dt", mp.dt, "step (years)");
    micro_cmd->add_option("--horizon", micro_horizon, "years to simulate");
    micro_cmd->add_flag("--conserve", mp.conserve_matter,
                        "consume reservoir particles (depleting potential)");
    micro_cmd->add_option("--growth-cost", mp.growth_cost, "reinvestment factor");
    micro_cmd->add_option("--exponent", mp.geometry_exponent,
                          "boundary scaling exponent (default 1/3)");
    micro_cmd->add_option("--seed", seed, "enable Poisson transfer rounding");
    micro_cmd->add_option("-o,--out", micro_out, "output CSV (default stdout)");

    auto* validate_cmd = app.add_subcommand(
        "validate", "run the data-level invariant suite against a manifest");
    add_manifest(validate_cmd, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fit_cmd) {
            auto manifest = DatasetManifest::load(manifest_path);
            Report report = run_pipeline(manifest, {});
            print_fit_summary(report);
            if (!outdir.empty())
                emit(report, outdir);
        } else if (*report_cmd) {
            auto manifest = DatasetManifest::load(manifest_path);
            Report report = run_pipeline(manifest, load_config(config_path));
            emit(report, outdir);
            std::cout << "wrote report to " << outdir << "\n";
        } else if (*forecast_cmd) {
            auto manifest = DatasetManifest::load(manifest_path);
            PipelineConfig cfg;
            cfg.forecast = ForecastConfig{horizon, dt, integrator_from_string(method),
                                          reservoir};
            Report report = run_pipeline(manifest, cfg);
            emit(report, outdir);
            std::cout << "wrote forecast to " << outdir << "\n";
        } else if (*backcast_cmd) {
            auto manifest = DatasetManifest::load(manifest_path);
            PipelineConfig cfg;
            cfg.backcast = YearRange{bc_from, bc_to};
            Report report = run_pipeline(manifest, cfg);
            emit(report, outdir);
            std::cout << "wrote backcast to " << outdir << "\n";
        } else if (*client_cmd) {
            auto manifest = DatasetManifest::load(manifest_path);
            PipelineConfig cfg;
            cfg.client_energy = cep;
            Report report = run_pipeline(manifest, cfg);
            emit(report, outdir);
            std::cout << "wrote client-energy breakdown to " << outdir << "\n";
        } else if (*micro_cmd) {
            mp.poisson_seed = seed;
            auto states = micro_run(ms0, mp, micro_horizon);
            std::string csv = "t,n_system,n_reservoir,A,C,E_cum\n";
            for (const auto& s : states) {
                char buf[256];
                std::snprintf(buf, sizeof(buf),
                              "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t,
                              s.n_system, s.n_reservoir, s.a_current, s.c_cum,
                              s.e_cum);
                csv += buf;
            }
            if (micro_out.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(micro_out, std::ios::binary);
                if (!out)
                    throw IoError("cannot write: " + micro_out);
                out << csv;
            }
        } else if (*validate_cmd) {
            auto manifest = DatasetManifest::load(manifest_path);
            auto results = run_validation(manifest);
            bool all_ok = true;
            for (const auto& r : results) {
                std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
                if (!r.detail.empty())
                    std::cout << "  (" << r.detail << ")";
                std::cout << "\n";
                all_ok = all_ok && r.passed;
            }
            if (!all_ok)
                return kExitData;
        }
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const FitError& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return kExitFit;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
