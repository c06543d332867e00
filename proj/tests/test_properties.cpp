// Property checks over randomised or swept inputs (fixed seeds).

#include "oracles.hpp"

#include "lvflow/critical_points.hpp"
#include "lvflow/dynamics.hpp"
#include "lvflow/lotka_volterra.hpp"
#include "lvflow/special_functions.hpp"
#include "lvflow/wigner_flow.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace lvflow;
using special::Complex;

TEST_CASE("property: erf odd and conjugate symmetric on |z| <= 5")
{
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> r(0.0, 5.0);
    std::uniform_real_distribution<double> phi(-3.14159, 3.14159);
    for (int i = 0; i < 2000; ++i) {
        const Complex z = std::polar(r(rng), phi(rng));
        const Complex e = special::erf_complex(z);
        const Complex odd = special::erf_complex(-z) + e;
        const Complex conj = special::erf_complex(std::conj(z)) - std::conj(e);
        CHECK(std::max(std::abs(odd.real()), std::abs(odd.imag())) <= 1e-13);
        CHECK(std::max(std::abs(conj.real()), std::abs(conj.imag())) <= 1e-13);
    }
}

TEST_CASE("property: Hermite derivative identity for random (n, u)")
{
    std::mt19937 rng(102);
    std::uniform_int_distribution<int> order(1, 10);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const int n = order(rng);
        const double x = u(rng);
        const double fd = oracle::central_difference([n](double v) { return special::hermite(n, v); }, x, 1e-6);
        const double ref = 2.0 * n * special::hermite(n - 1, x);
        CHECK(std::abs(fd - ref) <= 1e-6 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("property: Hamiltonian is separable")
{
    std::mt19937 rng(103);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const LVParams params(1.7);
    // h = 1e-3 keeps the rounding floor (~4 eps |H| / 4h^2) below the bar
    constexpr double h = 1e-3;
    for (int i = 0; i < 100; ++i) {
        const double x = u(rng);
        const double k = u(rng);
        const auto e = [&](double dx, double dk) { return lv::energy({x + dx, k + dk}, params); };
        const double mixed = (e(h, h) - e(h, -h) - e(-h, h) + e(-h, -h)) / (4 * h * h);
        CHECK(std::abs(mixed) <= 1e-8);
    }
}

TEST_CASE("property: current divergences have the stated parities")
{
    std::mt19937 rng(104);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> al(0.1, 2.0);
    for (int i = 0; i < 100; ++i) {
        const GaussianEnsemble ens(al(rng));
        const LVParams params(al(rng));
        const double x = u(rng);
        const double k = u(rng);
        const CurrentDivergences d = wigner::current_divergences({x, k}, ens, params);
        CHECK(std::abs(wigner::current_divergences({-x, k}, ens, params).div_jx + d.div_jx) <= 1e-14);
        CHECK(std::abs(wigner::current_divergences({x, -k}, ens, params).div_jk + d.div_jk) <= 1e-14);
    }
}

TEST_CASE("property: stationarity at the origin")
{
    for (double alpha : {1e-3, 0.1, 0.25, 0.5, 1.0, 1.5, 3.0}) {
        for (double a : {0.1, 0.25, 1.0, 4.0, 10.0}) {
            const FlowSample s = wigner::flow_sample({0, 0}, GaussianEnsemble(alpha), LVParams(a));
            CHECK(s.div_j == 0.0);
        }
    }
}

TEST_CASE("property: finite-difference consistency of the closed forms")
{
    constexpr double h = 1e-5;
    for (double alpha : {0.25, 0.5, 1.0}) {
        const GaussianEnsemble ens(alpha);
        for (double a : {0.25, 1.0, 4.0}) {
            const LVParams params(a);
            const auto jx = [&](double x, double k) {
                return wigner::quantum_velocity({x, k}, ens, params).vx * wigner::gaussian_density({x, k}, ens);
            };
            const auto jk = [&](double x, double k) {
                return wigner::quantum_velocity({x, k}, ens, params).vk * wigner::gaussian_density({x, k}, ens);
            };
            for (double x = -3.0; x <= 3.0; x += 0.3) {
                for (double k = -3.0; k <= 3.0; k += 0.3) {
                    const CurrentDivergences d = wigner::current_divergences({x, k}, ens, params);
                    CHECK(std::abs((jx(x + h, k) - jx(x - h, k)) / (2 * h) - d.div_jx) <= 1e-6);
                    CHECK(std::abs((jk(x, k + h) - jk(x, k - h)) / (2 * h) - d.div_jk) <= 1e-6);
                }
            }
        }
    }
}

TEST_CASE("property: series error decreases with eta_max until it reaches rounding level")
{
    for (double alpha : {0.25, 0.5, 1.0}) {
        const GaussianEnsemble ens(alpha);
        const LVParams params(1.0);
        for (double x = -3.0; x <= 3.0; x += 1.0) {
            for (double k = -3.0; k <= 3.0; k += 1.0) {
                const Velocity w = wigner::quantum_velocity({x, k}, ens, params);
                const double scale = std::max(1.0, norm(w));
                const auto terms = wigner::series_terms({x, k}, ens, params, SeriesTruncation(25));
                double sx = 0.0;
                double sk = 0.0;
                double previous = INFINITY;
                for (std::size_t e = 0; e < terms.size(); ++e) {
                    sx += terms[e].first;
                    sk += terms[e].second;
                    const double err = std::hypot(sx - w.vx, sk - w.vk) / scale;
                    if (e > 3 && previous > 1e-13) {
                        CHECK(err <= previous);
                    }
                    previous = err;
                }
                CHECK(previous <= 1e-10);
            }
        }
    }
}

TEST_CASE("property: classical limit scales like alpha^2")
{
    const auto gap = [](double alpha) {
        const GaussianEnsemble ens(alpha);
        const LVParams params(1.0);
        double worst = 0.0;
        for (double x = -3.0; x <= 3.0; x += 0.3) {
            for (double k = -3.0; k <= 3.0; k += 0.3) {
                const Velocity w = wigner::quantum_velocity({x, k}, ens, params);
                const Velocity v = lv::classical_velocity({x, k}, params);
                worst = std::max(worst, std::hypot(w.vx - v.vx, w.vk - v.vk));
            }
        }
        return worst;
    };
    const double fine = gap(1e-3);
    const double coarse = gap(1e-2);
    CHECK(fine <= 1e-5);
    CHECK(coarse / fine == doctest::Approx(100.0).epsilon(0.2));
}

TEST_CASE("property: classical energy conserved along the flow")
{
    for (double a : {0.25, 1.0, 4.0}) {
        for (const PhasePoint start : {PhasePoint{1, 0}, PhasePoint{0.5, 0.5}, PhasePoint{0, 1}, PhasePoint{-1, 0.7}}) {
            IntegratorConfig cfg;
            cfg.t_end = 100.0;
            const Trajectory t = dynamics::integrate(start, FieldMode::classical, std::nullopt, LVParams(a), cfg);
            CHECK(dynamics::max_relative_energy_drift(t) <= 1e-8);
        }
    }
}

TEST_CASE("property: tightening rel_tol does not worsen the orbit return")
{
    const LVParams params(1.0);
    double previous = INFINITY;
    for (double tol = 1e-5; tol >= 1e-9 * 0.99; tol /= 2.0) {
        IntegratorConfig cfg;
        cfg.t_end = 100.0;
        cfg.rel_tol = tol;
        cfg.abs_tol = tol * 1e-3;
        const Trajectory t = dynamics::integrate({1, 0}, FieldMode::classical, std::nullopt, params, cfg);
        const double ret = dynamics::closest_approach(t, {1, 0}, 10.0, classical_field(params));
        INFO("rel_tol " << tol << " return " << ret);
        CHECK(ret <= previous * 1.0000001);
        previous = ret;
    }
}

TEST_CASE("property: species stay positive and finite along quantum runs")
{
    for (double a : {0.25, 1.0, 4.0}) {
        IntegratorConfig cfg;
        cfg.t_end = 200.0;
        const Trajectory t
            = dynamics::integrate({1, 0}, FieldMode::quantum, GaussianEnsemble(0.25), LVParams(a), cfg);
        for (std::size_t i = 0; i < t.size(); ++i) {
            CHECK(std::isfinite(t.points[i].x));
            CHECK(std::isfinite(t.points[i].k));
            CHECK(t.species[i].y > 0.0);
            CHECK(t.species[i].z > 0.0);
        }
    }
}

TEST_CASE("property: quantum a = 1 runs with alpha < 1 stay bounded")
{
    const LVParams params(1.0);
    IntegratorConfig cfg;
    cfg.t_end = 200.0;
    for (const PhasePoint start : {PhasePoint{1, 0}, PhasePoint{0.5, 0.5}, PhasePoint{0, 1}}) {
        const Trajectory c = dynamics::integrate(start, FieldMode::classical, std::nullopt, params, cfg);
        for (double alpha : {0.25, 0.5, 0.75}) {
            const Trajectory q = dynamics::integrate(start, FieldMode::quantum, GaussianEnsemble(alpha), params, cfg);
            CHECK(dynamics::max_excursion(q) <= 2.0 * dynamics::max_excursion(c));
        }
    }
}

TEST_CASE("property: extinction windows survive resampling at twice the cadence")
{
    const LVParams params(0.25);
    IntegratorConfig coarse;
    coarse.t_end = 1000.0;
    coarse.sample_interval = 0.2;
    IntegratorConfig fine = coarse;
    fine.sample_interval = 0.1;
    const GaussianEnsemble ens(0.25);
    const Trajectory a = dynamics::integrate({0, 1}, FieldMode::quantum, ens, params, coarse);
    const Trajectory b = dynamics::integrate({0, 1}, FieldMode::quantum, ens, params, fine);
    const ExtinctionReport ra = dynamics::detect_extinctions(a, 0.04);
    const ExtinctionReport rb = dynamics::detect_extinctions(b, 0.04);
    REQUIRE(ra.windows.size() == rb.windows.size());
    REQUIRE_FALSE(ra.windows.empty());
    for (std::size_t i = 0; i < ra.windows.size(); ++i) {
        CHECK(ra.windows[i].species == rb.windows[i].species);
        CHECK(std::abs(ra.windows[i].t_start - rb.windows[i].t_start) <= coarse.sample_interval);
        CHECK(std::abs(ra.windows[i].t_end - rb.windows[i].t_end) <= coarse.sample_interval);
    }
}

TEST_CASE("property: refinement is idempotent")
{
    for (double alpha : {0.25, 0.5, 1.5}) {
        const VectorField f = quantum_field(GaussianEnsemble(alpha), LVParams(1.0));
        const Census c = critical::census(ScanConfig{}, f);
        REQUIRE_FALSE(c.zeros.empty());
        for (const CriticalPoint& z : c.zeros) {
            const RefinedZero again = critical::refine_zero(z.location, f);
            CHECK(again.converged);
            CHECK(std::hypot(again.location.x - z.location.x, again.location.k - z.location.k) <= 1e-9);
        }
    }
}

TEST_CASE("property: envelope node sets grow with the speed threshold")
{
    for (double alpha : {0.25, 1.5}) {
        const VectorField f = quantum_field(GaussianEnsemble(alpha), LVParams(1.0));
        ScanConfig cfg;
        cfg.resolution = 128;
        std::set<std::pair<int, int>> previous;
        for (double threshold : {0.02, 0.05, 0.07, 0.12, 0.3}) {
            cfg.speed_threshold = threshold;
            std::set<std::pair<int, int>> nodes;
            for (const EnvelopeRegion& r : critical::scan_envelope(cfg, f)) {
                for (const GridNode& n : r.member_nodes) {
                    nodes.insert({n.i, n.j});
                }
            }
            CHECK(std::includes(nodes.begin(), nodes.end(), previous.begin(), previous.end()));
            previous = std::move(nodes);
        }
    }
}

TEST_CASE("property: component count stable when the resolution doubles")
{
    for (double alpha : {0.25, 1.5}) {
        const VectorField f = quantum_field(GaussianEnsemble(alpha), LVParams(1.0));
        ScanConfig cfg;
        cfg.resolution = 256;
        const std::size_t base = critical::scan_envelope(cfg, f).size();
        cfg.resolution = 512;
        CHECK(critical::scan_envelope(cfg, f).size() == base);
    }
}

TEST_CASE("property: index additivity over several configurations")
{
    for (double alpha : {0.25, 0.75, 1.25, 1.5, 2.0}) {
        for (double a : {0.5, 1.0, 2.0}) {
            const Census c = critical::census(ScanConfig{}, quantum_field(GaussianEnsemble(alpha), LVParams(a)));
            int sum = 0;
            for (const CriticalPoint& z : c.zeros) {
                sum += z.winding;
            }
            INFO("alpha " << alpha << " a " << a);
            CHECK(sum == c.boundary_winding);
        }
    }
}
