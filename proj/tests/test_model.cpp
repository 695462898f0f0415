#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cloudtherm/model.hpp"

using namespace cloudtherm;

TEST_CASE("energy_flux")
{
    CHECK(energy_flux(0.001, 2000.0, 1.0) == doctest::Approx(2.0));
    CHECK(energy_flux(0.7, 0.0, 3.0) == 0.0);
    CHECK(energy_flux(1.0, 1.0, 1.0) == 1.0);
}

TEST_CASE("work_rate")
{
    CHECK(work_rate(0.5, 100.0) == doctest::Approx(50.0));
    CHECK(work_rate(0.0, 123.0) == 0.0);
    CHECK(work_rate(0.9, 0.0) == 0.0);
}

TEST_CASE("interface_growth")
{
    CHECK(interface_growth(50.0, 1.0) == doctest::Approx(50.0));
    CHECK(interface_growth(0.0, 2.0) == 0.0);
    CHECK(interface_growth(10.0, 4.0) == doctest::Approx(2.5));
    CHECK_THROWS_AS(interface_growth(10.0, 0.0), std::domain_error);
}

TEST_CASE("growth_rate")
{
    CHECK(growth_rate(0.001, 218.03) == doctest::Approx(0.21803));
    CHECK(growth_rate(5.0, 0.0) == 0.0);
    CHECK(growth_rate(2.0, 0.1) == doctest::Approx(0.2));
}

TEST_CASE("interface_length")
{
    CHECK(interface_length(8.0, 1000.0) == doctest::Approx(2000.0));
    CHECK(interface_length(0.0, 55.0) == 0.0);
    CHECK(interface_length(1000.0, 1.0) == doctest::Approx(10.0));
}

TEST_CASE("interface_length homogeneity and monotonicity")
{
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(1.0, 1e6);
    for (int i = 0; i < 100; ++i) {
        const double ns = u(rng), nr = u(rng), k = u(rng) / 1e3;
        CHECK(interface_length(k * k * k * ns, nr) ==
              doctest::Approx(k * interface_length(ns, nr)).epsilon(1e-12));
        CHECK(interface_length(ns * 2, nr) > interface_length(ns, nr));
        CHECK(interface_length(ns, nr * 2) > interface_length(ns, nr));
    }
}

TEST_CASE("identity chain closes the feedback loop")
{
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(1e-3, 1e3);
    for (int i = 0; i < 200; ++i) {
        const double alpha = u(rng), eps = u(rng), L = u(rng), dphi = u(rng);
        const double A = energy_flux(alpha, L, dphi);
        const double W = work_rate(eps, A);
        const double dLdt = interface_growth(W, dphi);
        // d ln L / dt = alpha * epsilon
        CHECK(dLdt / L == doctest::Approx(growth_rate(alpha, eps)).epsilon(1e-12));
    }
}

TEST_CASE("ModelParams validation")
{
    CHECK_NOTHROW(ModelParams::from_alpha_epsilon(3e-7, 1e5));
    ModelParams bad{1.0, 2.0, 3.0}; // eta != alpha * epsilon
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    ModelParams neg{-1.0, 2.0, -2.0};
    CHECK_THROWS_AS(neg.validate(), std::invalid_argument);
    ModelParams res = ModelParams::from_alpha_epsilon(1.0, 1.0);
    res.reservoir = -5.0;
    CHECK_THROWS_AS(res.validate(), std::invalid_argument);
}

TEST_CASE("SystemState validation")
{
    SystemState s{0.0, 1.0, 1.0, 0.0, 1.0, 0.0};
    CHECK_NOTHROW(s.validate());
    s.L = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
