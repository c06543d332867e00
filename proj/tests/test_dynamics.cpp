#include "lvflow/dynamics.hpp"
#include "lvflow/error.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace lvflow;

namespace {

// Trajectory with a prescribed prey series and constant predator.
Trajectory synthetic(double dt, std::size_t n, double (*prey)(double), double (*predator)(double))
{
    Trajectory t;
    for (std::size_t i = 0; i < n; ++i) {
        const double tau = dt * static_cast<double>(i);
        const SpeciesPoint s{prey(tau), predator(tau)};
        t.times.push_back(tau);
        t.species.push_back(s);
        t.points.push_back(lv::from_species(s));
        t.energy.push_back(0.0);
    }
    return t;
}

double one(double)
{
    return 1.0;
}

// dips below 0.04 on (1, 2), (5, 6) and (9, 10): revivals of length 3
double dipping(double t)
{
    const double phase = std::fmod(t, 4.0);
    return (phase > 1.0 && phase < 2.0) ? 0.01 : 0.5;
}

double wave(double t)
{
    return 1.0 + 0.5 * std::sin(t);
}

} // namespace

TEST_CASE("integrator config validation")
{
    IntegratorConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.rel_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = {};
    cfg.sample_interval = 200.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = {};
    cfg.t_end = -1.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg = {};
    cfg.max_step = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("classical trajectory at the fixed point stays put")
{
    for (double a : {0.25, 1.0, 4.0}) {
        IntegratorConfig cfg;
        cfg.t_end = 10.0;
        const Trajectory t = dynamics::integrate({0, 0}, FieldMode::classical, std::nullopt, LVParams(a), cfg);
        for (const PhasePoint& p : t.points) {
            CHECK(p == PhasePoint{0.0, 0.0});
        }
    }
}

TEST_CASE("sampling: uniform cadence, final sample at t_end, species exact")
{
    IntegratorConfig cfg;
    cfg.t_end = 10.05;
    cfg.sample_interval = 0.1;
    const Trajectory t = dynamics::integrate({1, 0}, FieldMode::classical, std::nullopt, LVParams(1.0), cfg);
    REQUIRE(t.size() == 102);
    CHECK(t.times.front() == 0.0);
    CHECK(t.times.back() == 10.05);
    for (std::size_t i = 1; i < t.size(); ++i) {
        CHECK(t.times[i] > t.times[i - 1]);
        CHECK(t.species[i] == lv::to_species(t.points[i]));
    }
    CHECK(t.times[37] == 37 * 0.1);
}

TEST_CASE("classical closed orbit from (1, 0)")
{
    const LVParams params(1.0);
    IntegratorConfig cfg;
    cfg.t_end = 100.0;
    const Trajectory t = dynamics::integrate({1, 0}, FieldMode::classical, std::nullopt, params, cfg);
    CHECK(dynamics::max_relative_energy_drift(t) <= 1e-8);
    CHECK(dynamics::closest_approach(t, {1, 0}, 10.0, classical_field(params)) <= 1e-6);
}

TEST_CASE("quantum mode needs an ensemble")
{
    CHECK_THROWS_AS(dynamics::integrate({1, 0}, FieldMode::quantum, std::nullopt, LVParams(1.0), IntegratorConfig{}),
                    DomainError);
}

TEST_CASE("non-finite field values raise a field-evaluation error")
{
    const VectorField bad = [](PhasePoint p) { return Velocity{p.x > 0.5 ? std::nan("") : 1.0, 0.0}; };
    IntegratorConfig cfg;
    cfg.t_end = 5.0;
    CHECK_THROWS_AS(dynamics::integrate_field({0, 0}, bad, FieldMode::classical, LVParams(1.0), cfg),
                    FieldEvaluationError);
}

TEST_CASE("finite-time blow-up raises an integration error with the last state")
{
    // dx/dt = x^2 from x = 1 blows up at t = 1
    const VectorField blowup = [](PhasePoint p) { return Velocity{p.x * p.x, 0.0}; };
    IntegratorConfig cfg;
    cfg.t_end = 2.0;
    try {
        dynamics::integrate_field({1, 0}, blowup, FieldMode::classical, LVParams(1.0), cfg);
        FAIL("expected a numerical failure");
    } catch (const IntegrationError& e) {
        CHECK(e.last_time() == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(e.last_state().x > 1e3);
    } catch (const FieldEvaluationError&) {
        // the trial stage may overflow first; still a numerical failure
    }
}

TEST_CASE("extinction windows: no windows at the fixed point")
{
    const Trajectory t = synthetic(0.1, 50, one, one);
    const ExtinctionReport r = dynamics::detect_extinctions(t, 0.04);
    CHECK(r.windows.empty());
    CHECK(r.revival_durations.empty());
    CHECK_THROWS_AS(dynamics::detect_extinctions(Trajectory{}, 0.04), DomainError);
    CHECK_THROWS_AS(dynamics::detect_extinctions(t, 0.0), DomainError);
}

TEST_CASE("extinction windows: interpolated crossings and revivals")
{
    const Trajectory t = synthetic(0.5, 23, dipping, one);
    const ExtinctionReport r = dynamics::detect_extinctions(t, 0.04);
    REQUIRE(r.window_count(Species::prey) == 3);
    CHECK(r.window_count(Species::predator) == 0);
    // samples at 1.0 (0.5) and 1.5 (0.01): crossing at 1.0 + 0.5 * 0.46 / 0.49
    CHECK(r.windows[0].t_start == doctest::Approx(1.0 + 0.5 * 0.46 / 0.49));
    CHECK(r.windows[0].t_end == doctest::Approx(1.5 + 0.5 * 0.03 / 0.49));
    REQUIRE(r.revival_durations.size() == 2);
    for (std::size_t i = 0; i < r.revival_durations.size(); ++i) {
        CHECK(r.revival_durations[i] >= 0.0);
        CHECK(r.revival_durations[i] == doctest::Approx(r.revivals[i].duration()));
    }
    for (std::size_t i = 1; i < r.windows.size(); ++i) {
        CHECK(r.windows[i].t_start >= r.windows[i - 1].t_end);
    }
}

TEST_CASE("extinction windows: open ends and two species")
{
    Trajectory t = synthetic(1.0, 6, one, one);
    t.species = {{0.01, 1.0}, {0.5, 1.0}, {0.5, 0.01}, {0.5, 0.01}, {0.5, 1.0}, {0.01, 0.01}};
    const ExtinctionReport r = dynamics::detect_extinctions(t, 0.04);
    REQUIRE(r.windows.size() == 4);
    CHECK(r.windows[0].open_start);
    CHECK(r.windows[0].species == Species::prey);
    CHECK(r.windows.back().open_end);
    CHECK(r.window_count(Species::predator) == 2);
    CHECK(r.revival_durations_of(Species::prey).size() == 1);
    CHECK(r.revival_durations_of(Species::predator).size() == 1);
}

TEST_CASE("prey peaks: quadratic refinement hits the true maximum")
{
    const Trajectory t = synthetic(0.1, 200, wave, one);
    const std::vector<Peak> peaks = dynamics::prey_peaks(t);
    REQUIRE(peaks.size() == 3);
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        CHECK(std::abs(peaks[i].time - (std::numbers::pi / 2 + 2 * std::numbers::pi * i)) < 2e-3);
        CHECK(peaks[i].value == doctest::Approx(1.5).epsilon(1e-4));
    }
}

TEST_CASE("dephasing: identical inputs, time shift oracle, insufficient data")
{
    const LVParams params(1.0);
    IntegratorConfig cfg;
    cfg.t_end = 60.0;
    const Trajectory a = dynamics::integrate({1, 0}, FieldMode::classical, std::nullopt, params, cfg);
    for (const double lag : dynamics::dephasing(a, a)) {
        CHECK(lag == 0.0);
    }

    // start B where A is at tau = 0.7 (before A's first prey peak): B runs 0.7 ahead
    const double shift = 0.7;
    REQUIRE(dynamics::prey_peaks(a).front().time > shift);
    const PhasePoint b0 = a.points[7];
    const Trajectory b = dynamics::integrate(b0, FieldMode::classical, std::nullopt, params, cfg);
    const std::vector<double> lags = dynamics::dephasing(a, b);
    REQUIRE(lags.size() >= 5);
    for (const double lag : lags) {
        CHECK(std::abs(lag + shift) <= cfg.sample_interval);
    }

    cfg.t_end = 3.0;
    const Trajectory short_run = dynamics::integrate({1, 0}, FieldMode::classical, std::nullopt, params, cfg);
    CHECK_THROWS_AS(dynamics::dephasing(short_run, a), InsufficientDataError);
}

TEST_CASE("quantum a = 1 trajectory stays on a nearby bounded orbit")
{
    const LVParams params(1.0);
    IntegratorConfig cfg;
    cfg.t_end = 200.0;
    const Trajectory c = dynamics::integrate({1, 0}, FieldMode::classical, std::nullopt, params, cfg);
    const Trajectory q = dynamics::integrate({1, 0}, FieldMode::quantum, GaussianEnsemble(0.25), params, cfg);
    CHECK(dynamics::max_excursion(q) <= 2.0 * dynamics::max_excursion(c));
    CHECK(dynamics::max_excursion(c) == doctest::Approx(1.0).epsilon(0.2));
}

TEST_CASE("max excursion and energy drift helpers")
{
    Trajectory t;
    t.times = {0.0, 1.0};
    t.points = {{0.5, -2.0}, {1.0, 0.0}};
    t.species = {lv::to_species(t.points[0]), lv::to_species(t.points[1])};
    t.energy = {2.0, 2.5};
    CHECK(dynamics::max_excursion(t) == 2.0);
    CHECK(dynamics::max_relative_energy_drift(t) == 0.25);
}
