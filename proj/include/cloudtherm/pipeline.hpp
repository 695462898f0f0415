#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "cloudtherm/calibrate.hpp"
#include "cloudtherm/dynamics.hpp"
#include "cloudtherm/io.hpp"
#include "cloudtherm/scenarios.hpp"

namespace cloudtherm {

struct ForecastConfig {
    double horizon = 10.0;
    double dt = 0.01;
    Integrator method = Integrator::rk4;
    std::optional<double> reservoir;
};

struct PipelineConfig {
    std::optional<YearRange> backcast;
    std::optional<ForecastConfig> forecast;
    std::optional<ClientEnergyParams> client_energy;

    static PipelineConfig load(const std::filesystem::path& path);
};

/// One fitted relation plus the per-year data behind its plot table.
struct NamedFit {
    FitResult fit;
    std::vector<int> years;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> y_hat;
    std::string x_label; // plot column names, e.g. "C" and "A"
    std::string y_label;
    std::string x_unit;
    std::string y_unit;
    bool flagged = false; // proportionality claim not supported (R^2 < 0.9)
};

struct BackcastResult {
    double alpha_hat = 0.0;
    AnnualSeries energy; // model-estimated, provenance "estimated"
};

struct Report {
    std::string entity;
    std::string tool_version;
    std::string notes;
    std::map<std::string, NamedFit> fits; // "alpha", "eta", "scope3", "capex"
    ModelParams params;                   // alpha/eta fitted, epsilon = eta/alpha
    std::optional<BackcastResult> backcast;
    std::optional<Trajectory> forecast;
    std::optional<EnergyBreakdown> breakdown;
};

/// Run all fits the manifest supports (energy + revenue required), plus the
/// optional backcast / forecast / client-energy analyses from the config.
Report run_pipeline(const DatasetManifest& manifest, const PipelineConfig& config);

/// Write report.json and the per-figure plot-data CSVs into outdir.
/// Deterministic: identical report -> byte-identical files.
void emit(const Report& report, const std::filesystem::path& outdir);

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

/// Data-level invariant suite for a manifest: fit diagnostics (normal
/// equations, rescale invariance), cumulative monotonicity, alignment
/// symmetry, and the eta = alpha * epsilon consistency of the fitted params.
std::vector<CheckResult> run_validation(const DatasetManifest& manifest);

} // namespace cloudtherm
