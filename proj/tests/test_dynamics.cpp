#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cloudtherm/dynamics.hpp"

using namespace cloudtherm;

namespace {

SystemState initial_state(double L0, const ModelParams& p)
{
    SystemState s;
    s.L = L0;
    s.delta_phi = p.delta_phi0;
    s.A = energy_flux(p.alpha, L0, p.delta_phi0);
    s.C = s.A / p.alpha;
    return s;
}

double max_rel_error_vs_closed_form(const Trajectory& traj, double a0, double eta)
{
    double worst = 0.0;
    for (const auto& s : traj.samples) {
        const double exact = closed_form_energy(a0, eta, s.t);
        worst = std::max(worst, std::abs(s.A - exact) / exact);
    }
    return worst;
}

} // namespace

TEST_CASE("closed_form_energy")
{
    CHECK(closed_form_energy(1.0, std::log(3.7) / 6.0, 6.0) ==
          doctest::Approx(3.7).epsilon(1e-4));
    CHECK(closed_form_energy(42.0, 0.0, 100.0) == 42.0);
    CHECK(closed_form_energy(100.0, 0.1, 0.0) == 100.0);
    CHECK_THROWS_AS(closed_form_energy(0.0, 0.1, 1.0), std::invalid_argument);
}

TEST_CASE("simulate matches closed form with infinite reservoir")
{
    auto p = ModelParams::from_alpha_epsilon(0.2, 1.0); // eta = 0.2
    auto s0 = initial_state(100.0, p);
    auto traj = simulate(p, s0, 10.0, 0.01, Integrator::rk4);
    REQUIRE(traj.samples.size() == 11);
    CHECK(max_rel_error_vs_closed_form(traj, s0.A, p.eta) < 1e-6);

    // all normalized growth rates agree: L/L0 == A/A0 == e^{eta t}
    for (const auto& s : traj.samples) {
        const double g = std::exp(p.eta * s.t);
        CHECK(s.L / s0.L == doctest::Approx(g).epsilon(1e-6));
        CHECK(s.A / s0.A == doctest::Approx(g).epsilon(1e-6));
    }
}

TEST_CASE("closed_form integrator variant")
{
    auto p = ModelParams::from_alpha_epsilon(0.1, 2.0);
    auto s0 = initial_state(50.0, p);
    auto traj = simulate(p, s0, 5.0, 0.01, Integrator::closed_form);
    for (const auto& s : traj.samples)
        CHECK(s.A == doctest::Approx(s0.A * std::exp(p.eta * s.t)).epsilon(1e-12));

    p.reservoir = 100.0;
    CHECK_THROWS_AS(simulate(p, s0, 5.0, 0.01, Integrator::closed_form),
                    std::invalid_argument);
}

TEST_CASE("zero efficiency freezes growth")
{
    auto p = ModelParams::from_alpha_epsilon(0.5, 0.0);
    auto s0 = initial_state(10.0, p);
    auto traj = simulate(p, s0, 5.0, 0.01);
    for (const auto& s : traj.samples) {
        CHECK(s.L == s0.L);
        CHECK(s.A == doctest::Approx(s0.A));
        CHECK(s.C == s0.C);
        // energy still flows at the constant rate A0
        CHECK(s.E_cum == doctest::Approx(s0.E_cum + s0.A * (s.t - s0.t)).epsilon(1e-9));
    }
}

TEST_CASE("inertia law along constant-potential trajectories")
{
    auto p = ModelParams::from_alpha_epsilon(3e-7, 0.2 / 3e-7);
    auto s0 = initial_state(2e10, p);
    auto traj = simulate(p, s0, 10.0, 0.01);
    for (const auto& s : traj.samples)
        CHECK(std::abs(s.A - s0.A - p.alpha * (s.C - s0.C)) / s.A < 1e-6);
}

TEST_CASE("RK4 order-4 convergence")
{
    auto p = ModelParams::from_alpha_epsilon(0.5, 1.0); // eta = 0.5
    auto s0 = initial_state(1.0, p);
    const double e1 = max_rel_error_vs_closed_form(
        simulate(p, s0, 10.0, 0.2), s0.A, p.eta);
    const double e2 = max_rel_error_vs_closed_form(
        simulate(p, s0, 10.0, 0.1), s0.A, p.eta);
    const double ratio = e1 / e2;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("Euler is first order")
{
    auto p = ModelParams::from_alpha_epsilon(0.5, 1.0);
    auto s0 = initial_state(1.0, p);
    const double e1 = max_rel_error_vs_closed_form(
        simulate(p, s0, 10.0, 0.2, Integrator::euler), s0.A, p.eta);
    const double e2 = max_rel_error_vs_closed_form(
        simulate(p, s0, 10.0, 0.1, Integrator::euler), s0.A, p.eta);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("reservoir depletion yields sigmoid cumulative energy")
{
    auto p = ModelParams::from_alpha_epsilon(0.3, 1.0); // eta = 0.3
    p.reservoir = 50.0;
    auto s0 = initial_state(1.0 / 0.3, p); // A(0) = 1
    auto traj = simulate(p, s0, 40.0, 0.01);

    // oracle at dt/10
    auto fine = simulate(p, s0, 40.0, 0.001);
    for (std::size_t i = 0; i < traj.samples.size(); ++i)
        CHECK(traj.samples[i].E_cum ==
              doctest::Approx(fine.samples[i].E_cum).epsilon(1e-6));

    double peak = 0.0;
    bool declined_after_peak = true;
    std::size_t peak_idx = 0;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        CHECK(traj.samples[i].E_cum <= *p.reservoir);
        if (i > 0)
            CHECK(traj.samples[i].E_cum >= traj.samples[i - 1].E_cum);
        if (traj.samples[i].A > peak) {
            peak = traj.samples[i].A;
            peak_idx = i;
        }
    }
    CHECK(peak_idx > 0);                          // rises
    CHECK(peak_idx < traj.samples.size() - 1);    // then falls
    for (std::size_t i = peak_idx + 1; i < traj.samples.size(); ++i)
        declined_after_peak =
            declined_after_peak && traj.samples[i].A <= traj.samples[i - 1].A + 1e-12;
    CHECK(declined_after_peak);

    // E_cum approaches the reservoir from below; before saturation it is
    // strictly under capacity (at saturation the gap underflows double precision)
    CHECK(traj.samples.back().E_cum > 0.95 * *p.reservoir);
    CHECK(traj.samples[12].E_cum < *p.reservoir);

    // second difference of E_cum changes sign exactly once
    const auto& s = traj.samples;
    double max_d2 = 0.0;
    std::vector<double> d2;
    for (std::size_t i = 2; i < s.size(); ++i) {
        d2.push_back(s[i].E_cum - 2 * s[i - 1].E_cum + s[i - 2].E_cum);
        max_d2 = std::max(max_d2, std::abs(d2.back()));
    }
    int sign_changes = 0;
    int prev_sign = 0;
    for (double v : d2) {
        if (std::abs(v) < 1e-9 * max_d2)
            continue;
        const int sign = v > 0 ? 1 : -1;
        if (prev_sign != 0 && sign != prev_sign)
            ++sign_changes;
        prev_sign = sign;
    }
    CHECK(sign_changes == 1);
}

TEST_CASE("embodied")
{
    // constant A (eta = 0): rectangle
    auto flat = ModelParams::from_alpha_epsilon(1.0, 0.0);
    auto s0 = initial_state(3.0, flat); // A = 3
    auto traj0 = simulate(flat, s0, 10.0, 0.01);
    CHECK(embodied(traj0, 4.0) == doctest::Approx(12.0).epsilon(1e-9));
    CHECK(embodied(traj0, 0.0) == 0.0);

    // exponential, eta = 0.2, a0 = 1: analytic integral
    auto p = ModelParams::from_alpha_epsilon(0.2, 1.0);
    auto e0 = initial_state(5.0, p); // A(0) = 0.2*5 = 1
    auto traj = simulate(p, e0, 10.0, 0.01);
    const double expect = (std::exp(2.0) - 1.0) / 0.2;
    CHECK(embodied(traj, 10.0) == doctest::Approx(expect).epsilon(1e-6));
    CHECK(expect == doctest::Approx(31.945).epsilon(1e-3));

    // proportional to L(t) - L(0) with constant delta_phi / epsilon
    for (const auto& s : traj.samples) {
        if (s.t == traj.samples.front().t)
            continue;
        const double lhs = embodied(traj, s.t);
        const double rhs = (p.delta_phi0 / p.epsilon) * (s.L - e0.L);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
    }

    CHECK_THROWS_AS(embodied(traj, -1.0), std::out_of_range);
    CHECK_THROWS_AS(embodied(traj, 10.5), std::out_of_range);
}

TEST_CASE("simulate input validation")
{
    auto p = ModelParams::from_alpha_epsilon(1.0, 1.0);
    auto s0 = initial_state(1.0, p);
    CHECK_THROWS_AS(simulate(p, s0, 10.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(simulate(p, s0, 0.001, 0.01), std::invalid_argument);
}
