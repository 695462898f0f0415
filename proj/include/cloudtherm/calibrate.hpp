#pragma once

#include <vector>

#include "cloudtherm/model.hpp"
#include "cloudtherm/series.hpp"

namespace cloudtherm {

enum class FitMode { through_origin, affine };

std::string to_string(FitMode mode);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;        // 0 in through_origin mode
    double r_squared = 0.0;        // against the mean-model baseline, clamped to [0,1]
    std::vector<double> residuals; // y - y_hat, per observation
    std::size_t n = 0;
    FitMode mode = FitMode::through_origin;
};

/// Least-squares fit of pair.y on pair.x.
/// through_origin: slope = sum(xy)/sum(x^2); affine: ordinary least squares.
/// Throws FitError when x is degenerate (all zero / no variance for affine).
FitResult fit_proportional(const SeriesPair& pair, FitMode mode);

struct AlphaFit {
    FitResult fit;
    ModelParams params;              // alpha = fitted slope; epsilon/eta unset (0)
    AnnualSeries cumulative_revenue; // C(t) used for the fit, aligned years
};

/// Calibrate alpha from the inertia relation A = alpha * C: builds
/// C(t) = cumulative(revenue, historical_revenue), aligns with the energy
/// series, and fits through the origin.
AlphaFit fit_alpha(const AnnualSeries& energy, const AnnualSeries& revenue,
                   double historical_revenue);

/// Calibrate eta by OLS of ln(energy) on t (years since first observation).
/// slope = eta_hat in 1/yr; r_squared measures exponential-fit quality.
/// Requires >= 3 strictly positive points.
FitResult fit_eta(const AnnualSeries& energy);

/// Two-point estimate for data where only an endpoint ratio is known:
/// eta = ln(ratio) / span_years.
double eta_from_endpoint_ratio(double ratio, double span_years);

struct ProxyFit {
    FitResult fit;
    bool proportionality_ok = true; // false when r_squared < 0.9
};

/// Fit an interface-size proxy (scope3 or capex) against cumulative energy
/// E_cum(t), through the origin. A poor fit (R^2 < 0.9) is flagged: the proxy
/// does not track system size for this entity.
ProxyFit fit_size_proxy(const AnnualSeries& proxy, const AnnualSeries& energy);

} // namespace cloudtherm
