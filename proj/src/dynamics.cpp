#include "cloudtherm/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace cloudtherm {

std::string to_string(Integrator method)
{
    switch (method) {
    case Integrator::closed_form: return "closed_form";
    case Integrator::euler: return "euler";
    case Integrator::rk4: return "rk4";
    }
    return "rk4";
}

Integrator integrator_from_string(const std::string& name)
{
    if (name == "closed_form") return Integrator::closed_form;
    if (name == "euler") return Integrator::euler;
    if (name == "rk4") return Integrator::rk4;
    throw std::invalid_argument("unknown integrator: '" + name + "'");
}

double closed_form_energy(double a0, double eta, double t)
{
    if (!(a0 > 0.0))
        throw std::invalid_argument("closed_form_energy: a0 must be > 0");
    return a0 * std::exp(eta * t);
}

namespace {

// State vector for the integrator: (L, C, E_cum).
using Vec3 = std::array<double, 3>;

struct Rhs {
    const ModelParams& p;

    double potential(double e_cum) const
    {
        if (!p.reservoir)
            return p.delta_phi0;
        return p.delta_phi0 * std::max(0.0, 1.0 - e_cum / *p.reservoir);
    }

    Vec3 operator()(const Vec3& y) const
    {
        const double dphi = potential(y[2]);
        if (dphi <= 0.0)
            return {0.0, 0.0, 0.0}; // depleted: growth halts
        const double A = energy_flux(p.alpha, y[0], dphi);
        const double W = work_rate(p.epsilon, A);
        return {interface_growth(W, dphi), W, A};
    }
};

Vec3 axpy(const Vec3& y, double h, const Vec3& d)
{
    return {y[0] + h * d[0], y[1] + h * d[1], y[2] + h * d[2]};
}

Vec3 step(const Rhs& f, const Vec3& y, double h, Integrator method)
{
    if (method == Integrator::euler)
        return axpy(y, h, f(y));
    const Vec3 k1 = f(y);
    const Vec3 k2 = f(axpy(y, h / 2, k1));
    const Vec3 k3 = f(axpy(y, h / 2, k2));
    const Vec3 k4 = f(axpy(y, h, k3));
    Vec3 out = y;
    for (int i = 0; i < 3; ++i)
        out[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

SystemState make_state(const Rhs& f, double t, const Vec3& y)
{
    const double dphi = f.potential(y[2]);
    SystemState s;
    s.t = t;
    s.L = y[0];
    s.C = y[1];
    s.E_cum = y[2];
    s.delta_phi = dphi;
    s.A = dphi > 0.0 ? energy_flux(f.p.alpha, y[0], dphi) : 0.0;
    return s;
}

} // namespace

Trajectory simulate(const ModelParams& params, const SystemState& initial,
                    double horizon, double dt, Integrator method,
                    double output_interval)
{
    params.validate();
    initial.validate();
    if (!(dt > 0.0))
        throw std::invalid_argument("simulate: dt must be > 0");
    if (horizon < dt)
        throw std::invalid_argument("simulate: horizon must be >= dt");
    if (!(output_interval > 0.0))
        throw std::invalid_argument("simulate: output_interval must be > 0");

    Trajectory traj;
    traj.params = params;
    traj.method = method;
    traj.dt = dt;

    const int n_out = static_cast<int>(std::floor(horizon / output_interval + 1e-9));

    if (method == Integrator::closed_form) {
        if (params.reservoir)
            throw std::invalid_argument(
                "simulate: closed form is only valid with an infinite reservoir");
        const double eta = params.eta;
        for (int i = 0; i <= n_out; ++i) {
            const double t = i * output_interval;
            const double g = std::exp(eta * t);
            SystemState s;
            s.t = initial.t + t;
            s.L = initial.L * g;
            s.delta_phi = params.delta_phi0;
            s.A = energy_flux(params.alpha, s.L, s.delta_phi);
            const double a0 = energy_flux(params.alpha, initial.L, params.delta_phi0);
            const double integral = eta != 0.0 ? a0 * (g - 1.0) / eta : a0 * t;
            s.E_cum = initial.E_cum + integral;
            s.C = initial.C + params.epsilon * integral;
            traj.samples.push_back(s);
        }
        return traj;
    }

    const Rhs f{traj.params};
    Vec3 y{initial.L, initial.C, initial.E_cum};
    traj.samples.push_back(make_state(f, initial.t, y));

    // integrate each output segment with a whole number of equal substeps
    const int k = std::max(1, static_cast<int>(std::ceil(output_interval / dt - 1e-9)));
    const double h = output_interval / k;
    for (int i = 1; i <= n_out; ++i) {
        for (int j = 0; j < k; ++j) {
            y = step(f, y, h, method);
            if (params.reservoir && y[2] > *params.reservoir)
                y[2] = *params.reservoir;
        }
        traj.samples.push_back(make_state(f, initial.t + i * output_interval, y));
    }
    return traj;
}

double embodied(const Trajectory& traj, double t)
{
    if (traj.samples.empty())
        throw std::invalid_argument("embodied: empty trajectory");
    const double t0 = traj.samples.front().t;
    const double t1 = traj.samples.back().t;
    if (t < t0 || t > t1)
        throw std::out_of_range("embodied: t outside trajectory span");
    auto it = std::lower_bound(traj.samples.begin(), traj.samples.end(), t,
                               [](const SystemState& s, double x) { return s.t < x; });
    double e;
    if (it == traj.samples.begin() || it->t == t) {
        e = it->E_cum;
    } else {
        const auto& b = *it;
        const auto& a = *(it - 1);
        const double w = (t - a.t) / (b.t - a.t);
        e = a.E_cum + w * (b.E_cum - a.E_cum);
    }
    return e - traj.samples.front().E_cum;
}

} // namespace cloudtherm
