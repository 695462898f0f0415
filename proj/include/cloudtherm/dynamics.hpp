#pragma once

#include <string>
#include <vector>

#include "cloudtherm/model.hpp"

namespace cloudtherm {

enum class Integrator { closed_form, euler, rk4 };

std::string to_string(Integrator method);
Integrator integrator_from_string(const std::string& name);

/// Simulated macro path. Samples are recorded at a uniform output interval
/// (default yearly), decoupled from the integration step dt.
struct Trajectory {
    ModelParams params;
    std::vector<SystemState> samples;
    Integrator method = Integrator::rk4;
    double dt = 0.01;
};

/// Constant-potential growth in closed form: a0 * exp(eta * t).
double closed_form_energy(double a0, double eta, double t);

/// Integrate the coupled system
///   dL/dt = eps * A / delta_phi,  A = alpha * L * delta_phi,
///   dC/dt = eps * A,              dE_cum/dt = A,
/// with delta_phi = delta_phi0 * max(0, 1 - E_cum/R) when a reservoir R is
/// set (constant otherwise). Potential hitting zero halts growth.
/// Integrator::closed_form requires an infinite reservoir.
Trajectory simulate(const ModelParams& params, const SystemState& initial,
                    double horizon, double dt = 0.01,
                    Integrator method = Integrator::rk4,
                    double output_interval = 1.0);

/// Cumulative energy drawn between the trajectory start and time t
/// (linear interpolation between samples). Throws if t is outside the span.
double embodied(const Trajectory& traj, double t);

} // namespace cloudtherm
