#include "cloudtherm/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "cloudtherm/version.hpp"

namespace cloudtherm {

using ordered_json = nlohmann::ordered_json;

PipelineConfig PipelineConfig::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config: " + path.string());
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError("config " + path.string() + ": " + e.what());
    }

    PipelineConfig cfg;
    try {
        if (doc.contains("backcast")) {
            const auto& b = doc.at("backcast");
            cfg.backcast = YearRange{b.at("from").get<int>(), b.at("to").get<int>()};
        }
        if (doc.contains("forecast")) {
            const auto& f = doc.at("forecast");
            ForecastConfig fc;
            fc.horizon = f.value("horizon", fc.horizon);
            fc.dt = f.value("dt", fc.dt);
            if (f.contains("method"))
                fc.method = integrator_from_string(f.at("method").get<std::string>());
            if (f.contains("reservoir"))
                fc.reservoir = f.at("reservoir").get<double>();
            cfg.forecast = fc;
        }
        if (doc.contains("client_energy")) {
            const auto& c = doc.at("client_energy");
            ClientEnergyParams p;
            p.device_wh_per_user_day = c.value("device_wh_per_user_day", p.device_wh_per_user_day);
            p.charger_efficiency = c.value("charger_efficiency", p.charger_efficiency);
            p.internet_share = c.value("internet_share", p.internet_share);
            p.days_per_year = c.value("days_per_year", p.days_per_year);
            if (c.contains("device_watts"))
                p.device_watts = c.at("device_watts").get<double>();
            if (c.contains("device_hours_per_day"))
                p.device_hours_per_day = c.at("device_hours_per_day").get<double>();
            p.validate();
            cfg.client_energy = p;
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError("config " + path.string() + ": " + e.what());
    }
    return cfg;
}

namespace {

NamedFit named_fit_from_pair(const FitResult& fit, const SeriesPair& pair,
                             std::string x_label, std::string y_label)
{
    NamedFit nf;
    nf.fit = fit;
    nf.years = pair.years();
    nf.x_label = std::move(x_label);
    nf.y_label = std::move(y_label);
    nf.x_unit = pair.x().unit();
    nf.y_unit = pair.y().unit();
    for (std::size_t i = 0; i < pair.size(); ++i) {
        const double x = pair.x().points()[i].value;
        const double y = pair.y().points()[i].value;
        nf.x.push_back(x);
        nf.y.push_back(y);
        nf.y_hat.push_back(fit.slope * x + fit.intercept);
    }
    return nf;
}

} // namespace

Report run_pipeline(const DatasetManifest& manifest, const PipelineConfig& config)
{
    if (!manifest.has(SeriesKind::energy))
        throw DataError("entity '" + manifest.entity +
                        "': energy series required for calibration");
    if (!manifest.has(SeriesKind::revenue))
        throw DataError("entity '" + manifest.entity +
                        "': revenue series required for alpha fit");

    const AnnualSeries energy = manifest.load_kind(SeriesKind::energy);
    const AnnualSeries revenue = manifest.load_kind(SeriesKind::revenue);
    const double historical = manifest.pre_window_cumulative_revenue.value_or(0.0);

    Report report;
    report.entity = manifest.entity;
    report.tool_version = kToolVersion;
    report.notes = manifest.notes;

    // alpha: energy vs cumulative revenue, through the origin
    AlphaFit alpha = fit_alpha(energy, revenue, historical);
    {
        SeriesPair pair(alpha.cumulative_revenue,
                        align(alpha.cumulative_revenue, energy).y());
        report.fits["alpha"] = named_fit_from_pair(alpha.fit, pair, "C", "A");
    }

    // eta: log-linear growth of energy
    FitResult eta = fit_eta(energy);
    {
        NamedFit nf;
        nf.fit = eta;
        nf.x_label = "t";
        nf.y_label = "A";
        nf.x_unit = "yr";
        nf.y_unit = energy.unit();
        const int y0 = energy.first_year();
        for (const auto& p : energy.points()) {
            const double t = p.year - y0;
            nf.years.push_back(p.year);
            nf.x.push_back(t);
            nf.y.push_back(p.value);
            nf.y_hat.push_back(std::exp(eta.intercept + eta.slope * t));
        }
        report.fits["eta"] = nf;
    }

    // interface-size proxies, when the manifest carries them
    for (SeriesKind kind : {SeriesKind::scope3, SeriesKind::capex}) {
        if (!manifest.has(kind))
            continue;
        const AnnualSeries proxy = manifest.load_kind(kind);
        ProxyFit pf = fit_size_proxy(proxy, energy);
        AnnualSeries e_cum = cumulative(energy, 0.0);
        SeriesPair pair = align(e_cum, proxy);
        NamedFit nf = named_fit_from_pair(pf.fit, pair, "E_cum", to_string(kind));
        nf.flagged = !pf.proportionality_ok;
        report.fits[to_string(kind)] = nf;
    }

    report.params = ModelParams::from_alpha_epsilon(
        alpha.fit.slope, eta.slope / alpha.fit.slope);

    if (config.backcast) {
        BackcastResult bc{alpha.fit.slope,
                          backcast_energy(revenue, alpha.fit.slope, *config.backcast,
                                          historical)};
        report.backcast = std::move(bc);
    }

    if (config.forecast) {
        ModelParams p = report.params;
        p.reservoir = config.forecast->reservoir;
        p.validate();
        const double a_last = energy.points().back().value;
        AnnualSeries e_cum = cumulative(energy, 0.0);
        SystemState s0;
        s0.t = energy.last_year();
        s0.A = a_last;
        s0.delta_phi = p.delta_phi0;
        s0.L = a_last / (p.alpha * p.delta_phi0);
        s0.C = a_last / p.alpha; // anchor on the inertia relation A = alpha C
        s0.E_cum = e_cum.points().back().value;
        report.forecast = simulate(p, s0, config.forecast->horizon,
                                   config.forecast->dt, config.forecast->method);
    }

    if (config.client_energy) {
        if (!manifest.has(SeriesKind::users))
            throw DataError("entity '" + manifest.entity +
                            "': users series required for client-energy analysis");
        const AnnualSeries users = manifest.load_kind(SeriesKind::users);
        std::optional<AnnualSeries> internet;
        if (manifest.has(SeriesKind::internet_energy))
            internet = manifest.load_kind(SeriesKind::internet_energy);
        report.breakdown = total_system_energy(
            energy, users, internet ? &*internet : nullptr, *config.client_energy);
    }

    return report;
}

namespace {

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ordered_json fit_to_json(const NamedFit& nf)
{
    ordered_json j;
    j["slope"] = nf.fit.slope;
    j["intercept"] = nf.fit.intercept;
    j["r_squared"] = nf.fit.r_squared;
    j["n"] = nf.fit.n;
    j["mode"] = to_string(nf.fit.mode);
    j["flagged"] = nf.flagged;
    j["x"] = ordered_json{{"label", nf.x_label}, {"unit", nf.x_unit}};
    j["y"] = ordered_json{{"label", nf.y_label}, {"unit", nf.y_unit}};
    j["residuals"] = nf.fit.residuals;
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write: " + path.string());
    out << content;
    if (!out)
        throw IoError("write failed: " + path.string());
}

} // namespace

void emit(const Report& report, const std::filesystem::path& outdir)
{
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec)
        throw IoError("cannot create output directory: " + outdir.string());

    ordered_json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["tool_version"] = report.tool_version;
    doc["entity"] = report.entity;
    doc["notes"] = report.notes;
    doc["fits"] = ordered_json::object();
    for (const auto& [name, nf] : report.fits)
        doc["fits"][name] = fit_to_json(nf);
    doc["params"] = ordered_json{{"alpha", report.params.alpha},
                                 {"epsilon", report.params.epsilon},
                                 {"eta", report.params.eta},
                                 {"delta_phi0", report.params.delta_phi0}};
    if (report.backcast) {
        ordered_json bc;
        bc["alpha_hat"] = report.backcast->alpha_hat;
        bc["unit"] = report.backcast->energy.unit();
        bc["years"] = ordered_json::array();
        for (const auto& p : report.backcast->energy.points())
            bc["years"].push_back(ordered_json{{"year", p.year},
                                               {"energy", p.value},
                                               {"provenance", "estimated"}});
        doc["backcast"] = bc;
    }
    if (report.forecast) {
        ordered_json fc;
        fc["method"] = to_string(report.forecast->method);
        fc["dt"] = report.forecast->dt;
        fc["provenance"] = "estimated";
        fc["samples"] = ordered_json::array();
        for (const auto& s : report.forecast->samples)
            fc["samples"].push_back(ordered_json{{"t", s.t},
                                                 {"L", s.L},
                                                 {"A", s.A},
                                                 {"C", s.C},
                                                 {"delta_phi", s.delta_phi},
                                                 {"E_cum", s.E_cum}});
        doc["forecast"] = fc;
    }
    if (report.breakdown) {
        ordered_json bd = ordered_json::array();
        for (const auto& r : report.breakdown->rows)
            bd.push_back(ordered_json{{"year", r.year},
                                      {"datacenter", r.datacenter},
                                      {"device", r.device},
                                      {"network", r.network},
                                      {"total", r.total}});
        doc["client_energy"] = ordered_json{{"unit", "MWh"}, {"years", bd}};
    }
    write_file(outdir / "report.json", doc.dump(2) + "\n");

    for (const auto& [name, nf] : report.fits) {
        std::string csv;
        csv += "# " + nf.x_label + ": " + nf.x_unit + ", " + nf.y_label + ": " +
               nf.y_unit + "\n";
        csv += "year," + nf.x_label + "," + nf.y_label + "_observed," + nf.y_label +
               "_fitted\n";
        for (std::size_t i = 0; i < nf.years.size(); ++i)
            csv += std::to_string(nf.years[i]) + "," + fmt(nf.x[i]) + "," +
                   fmt(nf.y[i]) + "," + fmt(nf.y_hat[i]) + "\n";
        write_file(outdir / ("plot_" + name + ".csv"), csv);
    }

    if (report.backcast) {
        std::string csv = "# energy: " + report.backcast->energy.unit() +
                          "; provenance: estimated\nyear,energy_estimated\n";
        for (const auto& p : report.backcast->energy.points())
            csv += std::to_string(p.year) + "," + fmt(p.value) + "\n";
        write_file(outdir / "backcast.csv", csv);
    }

    if (report.forecast) {
        std::string csv = "# t: yr, L: interface, A: MWh/yr, C: USD, E_cum: MWh\n"
                          "t,L,A,C,delta_phi,E_cum\n";
        for (const auto& s : report.forecast->samples)
            csv += fmt(s.t) + "," + fmt(s.L) + "," + fmt(s.A) + "," + fmt(s.C) + "," +
                   fmt(s.delta_phi) + "," + fmt(s.E_cum) + "\n";
        write_file(outdir / "forecast.csv", csv);
    }

    if (report.breakdown) {
        std::string csv = "# all components: MWh/yr\nyear,datacenter,device,network,total\n";
        for (const auto& r : report.breakdown->rows)
            csv += std::to_string(r.year) + "," + fmt(r.datacenter) + "," +
                   fmt(r.device) + "," + fmt(r.network) + "," + fmt(r.total) + "\n";
        write_file(outdir / "plot_energy_breakdown.csv", csv);
    }
}

std::vector<CheckResult> run_validation(const DatasetManifest& manifest)
{
    std::vector<CheckResult> out;
    auto check = [&out](const std::string& name, bool ok, std::string detail) {
        out.push_back({name, ok, std::move(detail)});
    };

    const AnnualSeries energy = manifest.load_kind(SeriesKind::energy);
    const AnnualSeries revenue = manifest.load_kind(SeriesKind::revenue);
    const double historical = manifest.pre_window_cumulative_revenue.value_or(0.0);

    // cumulative monotone for non-negative inputs
    {
        AnnualSeries c = cumulative(revenue, historical);
        bool mono = true;
        for (std::size_t i = 1; i < c.size(); ++i)
            mono = mono && c.points()[i].value >= c.points()[i - 1].value;
        check("cumulative_revenue_monotone", mono, "");
    }

    // alignment symmetric in year selection
    {
        AnnualSeries c = cumulative(revenue, historical);
        bool same = align(c, energy).years() == align(energy, c).years();
        check("alignment_symmetric", same, "");
    }

    // through-origin normal equation: sum(x * residual) == 0
    {
        AlphaFit af = fit_alpha(energy, revenue, historical);
        double sxr = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < af.fit.residuals.size(); ++i) {
            const double x = af.cumulative_revenue.points()[i].value;
            sxr += x * af.fit.residuals[i];
            sxx += x * x;
        }
        const double rel = sxx > 0.0 ? std::abs(sxr) / sxx : 0.0;
        check("alpha_fit_normal_equation", rel < 1e-9,
              "sum(x*resid)/sum(x^2) = " + fmt(rel));
    }

    // eta estimate invariant under energy rescaling
    {
        FitResult a = fit_eta(energy);
        std::vector<YearValue> scaled;
        for (const auto& p : energy.points())
            scaled.push_back({p.year, 7.5 * p.value});
        FitResult b = fit_eta(AnnualSeries(energy.entity(), energy.kind(),
                                           energy.unit(), std::move(scaled)));
        const double diff = std::abs(a.slope - b.slope);
        check("eta_rescale_invariant", diff < 1e-12 * std::max(1.0, std::abs(a.slope)),
              "slope shift " + fmt(diff));
    }

    // fitted parameter set is internally consistent (eta = alpha * epsilon)
    {
        AlphaFit af = fit_alpha(energy, revenue, historical);
        FitResult ef = fit_eta(energy);
        bool ok = true;
        std::string detail;
        try {
            ModelParams::from_alpha_epsilon(af.fit.slope, ef.slope / af.fit.slope);
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        check("params_consistent", ok, detail);
    }

    // proxy proportionality, when proxies are present
    for (SeriesKind kind : {SeriesKind::scope3, SeriesKind::capex}) {
        if (!manifest.has(kind))
            continue;
        ProxyFit pf = fit_size_proxy(manifest.load_kind(kind), energy);
        check(to_string(kind) + "_proportional", pf.proportionality_ok,
              "R^2 = " + fmt(pf.fit.r_squared));
    }

    return out;
}

} // namespace cloudtherm
