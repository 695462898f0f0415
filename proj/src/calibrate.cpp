#include "cloudtherm/calibrate.hpp"

#include <algorithm>
#include <cmath>

#include "cloudtherm/error.hpp"

namespace cloudtherm {

std::string to_string(FitMode mode)
{
    return mode == FitMode::through_origin ? "through_origin" : "affine";
}

namespace {

FitResult fit_xy(const std::vector<double>& x, const std::vector<double>& y, FitMode mode)
{
    const std::size_t n = x.size();
    if (n < 2)
        throw FitError("fit: need at least 2 observations");

    double slope = 0.0, intercept = 0.0;
    if (mode == FitMode::through_origin) {
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sxx += x[i] * x[i];
            sxy += x[i] * y[i];
        }
        if (sxx == 0.0)
            throw FitError("fit: degenerate x (all zero), through-origin slope undefined");
        slope = sxy / sxx;
    } else {
        double sx = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sx += x[i];
            sy += y[i];
        }
        const double mx = sx / n, my = sy / n;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sxx += (x[i] - mx) * (x[i] - mx);
            sxy += (x[i] - mx) * (y[i] - my);
        }
        if (sxx == 0.0)
            throw FitError("fit: degenerate x (no variance), affine slope undefined");
        slope = sxy / sxx;
        intercept = my - slope * mx;
    }

    FitResult r;
    r.slope = slope;
    r.intercept = intercept;
    r.n = n;
    r.mode = mode;
    r.residuals.resize(n);

    double sy = 0.0;
    for (double v : y)
        sy += v;
    const double my = sy / n;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double yhat = slope * x[i] + intercept;
        r.residuals[i] = y[i] - yhat;
        ss_res += r.residuals[i] * r.residuals[i];
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    if (ss_tot > 0.0)
        r.r_squared = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
    else
        r.r_squared = 0.0; // constant y: the mean model already explains everything
    return r;
}

} // namespace

FitResult fit_proportional(const SeriesPair& pair, FitMode mode)
{
    std::vector<double> x, y;
    x.reserve(pair.size());
    y.reserve(pair.size());
    for (const auto& p : pair.x().points())
        x.push_back(p.value);
    for (const auto& p : pair.y().points())
        y.push_back(p.value);
    return fit_xy(x, y, mode);
}

AlphaFit fit_alpha(const AnnualSeries& energy, const AnnualSeries& revenue,
                   double historical_revenue)
{
    if (historical_revenue < 0.0)
        throw std::invalid_argument("fit_alpha: historical_revenue must be >= 0");
    AnnualSeries cum = cumulative(revenue, historical_revenue);
    SeriesPair pair = align(cum, energy);
    FitResult fit = fit_proportional(pair, FitMode::through_origin);

    ModelParams params;
    params.alpha = fit.slope;
    params.validate();
    return AlphaFit{std::move(fit), params, pair.x()};
}

FitResult fit_eta(const AnnualSeries& energy)
{
    if (energy.size() < 3)
        throw std::invalid_argument("fit_eta: need at least 3 points");
    std::vector<double> t, ln_a;
    t.reserve(energy.size());
    ln_a.reserve(energy.size());
    const int y0 = energy.first_year();
    for (const auto& p : energy.points()) {
        if (p.value <= 0.0)
            throw std::invalid_argument("fit_eta: non-positive energy at year " +
                                        std::to_string(p.year));
        t.push_back(static_cast<double>(p.year - y0));
        ln_a.push_back(std::log(p.value));
    }
    return fit_xy(t, ln_a, FitMode::affine);
}

double eta_from_endpoint_ratio(double ratio, double span_years)
{
    if (!(ratio > 0.0))
        throw std::invalid_argument("eta_from_endpoint_ratio: ratio must be > 0");
    if (!(span_years > 0.0))
        throw std::invalid_argument("eta_from_endpoint_ratio: span must be > 0");
    return std::log(ratio) / span_years;
}

ProxyFit fit_size_proxy(const AnnualSeries& proxy, const AnnualSeries& energy)
{
    if (proxy.kind() != SeriesKind::scope3 && proxy.kind() != SeriesKind::capex)
        throw std::invalid_argument("fit_size_proxy: proxy must be scope3 or capex, got " +
                                    to_string(proxy.kind()));
    AnnualSeries e_cum = cumulative(energy, 0.0);
    SeriesPair pair = align(e_cum, proxy);
    FitResult fit = fit_proportional(pair, FitMode::through_origin);
    return ProxyFit{fit, fit.r_squared >= 0.9};
}

} // namespace cloudtherm
