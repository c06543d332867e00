#include "oracles.hpp"

#include "lvflow/error.hpp"
#include "lvflow/lotka_volterra.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace lvflow;

TEST_CASE("LVParams rejects non-positive and non-finite couplings")
{
    CHECK_THROWS_AS(LVParams(0.0), DomainError);
    CHECK_THROWS_AS(LVParams(-1.0), DomainError);
    CHECK_THROWS_AS(LVParams(std::nan("")), DomainError);
    CHECK_THROWS_AS(LVParams{INFINITY}, DomainError);
    CHECK(LVParams(0.25).a() == 0.25);
}

TEST_CASE("energy examples")
{
    CHECK(lv::energy({0, 0}, LVParams(1.0)) == 2.0);
    CHECK(lv::energy({0, 0}, LVParams(0.25)) == 1.25);
    CHECK(lv::energy({1, 0}, LVParams(1.0)) == doctest::Approx(2.0 + std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("energy minimum a + 1 at the origin")
{
    const LVParams params(0.7);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        CHECK(lv::energy({u(rng), u(rng)}, params) >= 1.7);
    }
}

TEST_CASE("classical velocity examples")
{
    for (double a : {0.25, 1.0, 4.0}) {
        CHECK(lv::classical_velocity({0, 0}, LVParams(a)) == Velocity{0.0, 0.0});
    }
    const Velocity v1 = lv::classical_velocity({0, std::numbers::ln2}, LVParams(1.0));
    CHECK(v1.vx == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(v1.vk == 0.0);
    const Velocity v2 = lv::classical_velocity({std::numbers::ln2, 0}, LVParams(4.0));
    CHECK(v2.vx == 0.0);
    CHECK(v2.vk == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("classical velocity is the symplectic gradient of the energy")
{
    const LVParams params(1.3);
    constexpr double h = 1e-6;
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const double x = u(rng);
        const double k = u(rng);
        const Velocity v = lv::classical_velocity({x, k}, params);
        const double dh_dk = oracle::central_difference([&](double s) { return lv::energy({x, s}, params); }, k, h);
        const double dh_dx = oracle::central_difference([&](double s) { return lv::energy({s, k}, params); }, x, h);
        CHECK(std::abs(v.vx - dh_dk) <= 1e-6);
        CHECK(std::abs(v.vk + dh_dx) <= 1e-6);
    }
}

TEST_CASE("odd derivatives: examples")
{
    CHECK(lv::odd_derivative_x({0, 0}, LVParams(2.0), 0) == 0.0);
    CHECK(lv::odd_derivative_x({0, 0}, LVParams(1.0), 1) == -1.0);
    CHECK(lv::odd_derivative_k({0, 0}, 0) == 0.0);
    CHECK(lv::odd_derivative_k({0, 0}, 3) == -1.0);
    CHECK(lv::odd_derivative_k({0, 1}, 0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
    CHECK_THROWS_AS(lv::odd_derivative_k({0, 0}, -1), DomainError);
}

TEST_CASE("odd derivatives with eta = 0 reproduce the classical velocity")
{
    const LVParams params(0.6);
    for (double x : {-1.5, 0.0, 0.8}) {
        for (double k : {-2.0, 0.3, 1.9}) {
            const Velocity v = lv::classical_velocity({x, k}, params);
            CHECK(lv::odd_derivative_x({x, k}, params, 0) == -v.vk);
            CHECK(lv::odd_derivative_k({x, k}, 0) == v.vx);
        }
    }
}

TEST_CASE("odd derivatives against finite differences of the even derivative")
{
    // d^(2 eta) H / dx^(2 eta) = a e^-x and d^(2 eta) H / dk^(2 eta) = e^-k for eta >= 1
    const LVParams params(2.5);
    constexpr double h = 1e-6;
    for (int eta = 1; eta <= 4; ++eta) {
        for (double s = -2.0; s <= 2.0; s += 0.5) {
            const double fd_x = oracle::central_difference([&](double v) { return params.a() * std::exp(-v); }, s, h);
            const double fd_k = oracle::central_difference([](double v) { return std::exp(-v); }, s, h);
            CHECK(std::abs(lv::odd_derivative_x({s, 0.0}, params, eta) - fd_x) <= 1e-6 * std::max(1.0, std::abs(fd_x)));
            CHECK(std::abs(lv::odd_derivative_k({0.0, s}, eta) - fd_k) <= 1e-6 * std::max(1.0, std::abs(fd_k)));
        }
    }
}

TEST_CASE("species mapping")
{
    CHECK(lv::to_species({0, 0}) == SpeciesPoint{1.0, 1.0});
    const SpeciesPoint s = lv::to_species({std::numbers::ln2, 2 * std::numbers::ln2});
    CHECK(s.y == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s.z == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(lv::from_species({0.0, 1.0}), DomainError);
    CHECK_THROWS_AS(lv::from_species({1.0, -2.0}), DomainError);
    CHECK_THROWS_AS(lv::from_species({std::nan(""), 1.0}), DomainError);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const PhasePoint p{u(rng), u(rng)};
        const PhasePoint back = lv::from_species(lv::to_species(p));
        worst = std::max({worst, std::abs(back.x - p.x), std::abs(back.k - p.k)});
    }
    CHECK(worst <= 1e-14);
}
