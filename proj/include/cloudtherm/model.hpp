#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace cloudtherm {

/// Fitted or assumed thermodynamic constants.
///
/// alpha      conductivity, (MWh/yr) per unit potential per interface length;
///            against cumulative revenue this is (MWh/yr)/USD
/// epsilon    efficiency, USD/MWh
/// eta        growth rate, 1/yr; must equal alpha * epsilon
/// delta_phi0 initial potential (dimensionless scalar, default 1); only the
///            product alpha * delta_phi is observable, calibrations keep it at 1
/// reservoir  optional capacity in cumulative-energy units (absent = infinite bath)
struct ModelParams {
    double alpha = 0.0;
    double epsilon = 0.0;
    double eta = 0.0;
    double delta_phi0 = 1.0;
    std::optional<double> reservoir;

    void validate() const
    {
        if (!(alpha > 0.0))
            throw std::invalid_argument("ModelParams: alpha must be > 0");
        if (epsilon < 0.0)
            throw std::invalid_argument("ModelParams: epsilon must be >= 0");
        if (!(delta_phi0 > 0.0))
            throw std::invalid_argument("ModelParams: delta_phi0 must be > 0");
        double expected = alpha * epsilon;
        double scale = std::max(std::abs(eta), std::abs(expected));
        if (scale > 0.0 && std::abs(eta - expected) > 1e-9 * scale)
            throw std::invalid_argument("ModelParams: eta must equal alpha * epsilon");
        if (reservoir && !(*reservoir > 0.0))
            throw std::invalid_argument("ModelParams: reservoir must be > 0 when set");
    }

    static ModelParams from_alpha_epsilon(double alpha, double epsilon,
                                          double delta_phi0 = 1.0,
                                          std::optional<double> reservoir = std::nullopt)
    {
        ModelParams p{alpha, epsilon, alpha * epsilon, delta_phi0, reservoir};
        p.validate();
        return p;
    }
};

/// Instantaneous macro state: interface length L, energy flux A (MWh/yr),
/// cumulative work C (USD), current potential, cumulative energy drawn (MWh).
struct SystemState {
    double t = 0.0;
    double L = 0.0;
    double A = 0.0;
    double C = 0.0;
    double delta_phi = 1.0;
    double E_cum = 0.0;

    void validate() const
    {
        if (!(L > 0.0))
            throw std::invalid_argument("SystemState: L must be > 0");
        if (A < 0.0 || C < 0.0 || E_cum < 0.0 || delta_phi < 0.0)
            throw std::invalid_argument("SystemState: A, C, E_cum, delta_phi must be >= 0");
    }
};

/// Energy drawn through the interface: A = alpha * L * delta_phi.
inline double energy_flux(double alpha, double L, double delta_phi)
{
    return alpha * L * delta_phi;
}

/// Work produced per unit time: W = epsilon * A.
inline double work_rate(double epsilon, double A)
{
    return epsilon * A;
}

/// Interface expansion driven by work: dL/dt = W / delta_phi.
/// Zero potential means the reservoir is depleted and the relation is
/// undefined; callers must handle that as halted growth.
inline double interface_growth(double W, double delta_phi)
{
    if (!(delta_phi > 0.0))
        throw std::domain_error("interface_growth: zero potential (depleted reservoir)");
    return W / delta_phi;
}

/// eta = alpha * epsilon, the exponential rate of system growth.
inline double growth_rate(double alpha, double epsilon)
{
    return alpha * epsilon;
}

/// Interface size of a discrete ensemble: L = N_S^exponent * N_R.
/// The default exponent 1/3 is the boundary scaling of a 3-d system.
inline double interface_length(double n_system, double n_reservoir,
                               double exponent = 1.0 / 3.0)
{
    return std::pow(n_system, exponent) * n_reservoir;
}

} // namespace cloudtherm
