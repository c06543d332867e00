#include "oracles.hpp"

#include "lvflow/error.hpp"
#include "lvflow/special_functions.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace lvflow;
using special::Complex;

namespace {

double rel_err(Complex got, std::complex<double> ref)
{
    return std::abs(got - ref) / std::max(1.0, std::abs(ref));
}

} // namespace

TEST_CASE("hermite: low orders")
{
    CHECK(special::hermite(0, 0.7) == 1.0);
    CHECK(special::hermite(1, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(special::hermite(2, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(special::hermite(3, 2.0) == doctest::Approx(8 * 8 - 12 * 2).epsilon(1e-15));
}

TEST_CASE("hermite: order guard")
{
    CHECK_THROWS_AS(special::hermite(201, 0.1), DomainError);
    CHECK_THROWS_AS(special::hermite(-1, 0.1), DomainError);
    CHECK_NOTHROW(special::hermite(200, 0.1));
}

TEST_CASE("hermite: recurrence matches explicit coefficient sum")
{
    for (int n = 0; n <= 30; ++n) {
        for (double u : {-2.5, -1.0, -0.3, 0.0, 0.4, 1.7, 3.0}) {
            const double ref = static_cast<double>(oracle::hermite_explicit(n, u));
            const double scale = static_cast<double>(oracle::hermite_explicit_scale(n, u));
            CHECK(std::abs(special::hermite(n, u) - ref) <= 1e-12 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("hermite: derivative identity by central differences")
{
    constexpr double h = 1e-6;
    for (int n = 1; n <= 10; ++n) {
        for (double u = -3.0; u <= 3.0; u += 0.25) {
            const double fd = oracle::central_difference([n](double v) { return special::hermite(n, v); }, u, h);
            const double ref = 2.0 * n * special::hermite(n - 1, u);
            CHECK(std::abs(fd - ref) <= 1e-6 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("hermite_sequence agrees with hermite")
{
    std::vector<double> seq(41);
    special::hermite_sequence(1.3, seq);
    for (int n = 0; n <= 40; ++n) {
        CHECK(seq[n] == special::hermite(n, 1.3));
    }
}

TEST_CASE("erf_complex: origin, real axis and imaginary axis")
{
    CHECK(special::erf_complex({0.0, 0.0}) == Complex(0.0, 0.0));
    const Complex e1 = special::erf_complex({1.0, 0.0});
    CHECK(std::abs(e1.real() - oracle::erf_series_d(1.0, 0.0).real()) <= 1e-13);
    CHECK(e1.imag() == 0.0);
    for (double y : {0.1, 0.9, 2.5, 6.0}) {
        CHECK(special::erf_complex({0.0, y}).real() == 0.0);
    }
}

TEST_CASE("erf_complex: 200-term Maclaurin oracle on |z| <= 3")
{
    double worst = 0.0;
    for (double x = -3.0; x <= 3.0; x += 0.1) {
        for (double y = -3.0; y <= 3.0; y += 0.1) {
            if (std::hypot(x, y) <= 3.0) {
                worst = std::max(worst, rel_err(special::erf_complex({x, y}), oracle::erf_series_d(x, y)));
            }
        }
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("erf_complex: real axis against the Maclaurin oracle and std::erf")
{
    for (double x = -3.0; x <= 3.0; x += 0.01) {
        const Complex e = special::erf_complex({x, 0.0});
        CHECK(std::abs(e.real() - oracle::erf_series_d(x, 0.0).real()) <= 1e-13);
        CHECK(std::abs(e.real() - std::erf(x)) <= 1e-15);
    }
}

TEST_CASE("erf_complex: symmetries")
{
    for (double x = -5.0; x <= 5.0; x += 0.37) {
        for (double y = -5.0; y <= 5.0; y += 0.41) {
            const Complex z(x, y);
            const Complex e = special::erf_complex(z);
            CHECK(std::abs(special::erf_complex(-z) + e) <= 1e-13 * std::max(1.0, std::abs(e)));
            CHECK(std::abs(special::erf_complex(std::conj(z)) - std::conj(e)) <= 1e-13 * std::max(1.0, std::abs(e)));
        }
    }
}

TEST_CASE("erf_complex: far field and domain guard")
{
    const Complex far = special::erf_complex({30.0, 2.0});
    CHECK(std::abs(far - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::isfinite(special::erf_complex({1e8, 3.0}).real()));
    CHECK_THROWS_AS(special::erf_complex({0.0, 10.5}), DomainError);
    CHECK_THROWS_AS(special::erf_complex({std::nan(""), 0.0}), DomainError);
}

TEST_CASE("faddeeva_w: against erfc relations")
{
    CHECK(std::abs(special::faddeeva_w({0.0, 0.0}) - Complex(1.0, 0.0)) < 1e-15);
    // w(iy) = exp(y^2) erfc(y) for real y
    for (double y : {0.2, 1.0, 3.0, 8.0}) {
        const double ref = std::exp(y * y) * std::erfc(y);
        const Complex w = special::faddeeva_w({0.0, y});
        CHECK(std::abs(w.real() - ref) <= 1e-13 * ref);
        CHECK(std::abs(w.imag()) <= 1e-16);
    }
    // w(z) = exp(-z^2) (1 - erf(-iz)), series oracle, |z| <= 2
    for (double x = -2.0; x <= 2.0; x += 0.3) {
        for (double y = -1.5; y <= 1.5; y += 0.3) {
            const oracle::LongComplex z(x, y);
            const oracle::LongComplex ref = std::exp(-z * z) * (1.0L - oracle::erf_series(-oracle::LongComplex(0, 1) * z));
            const Complex got = special::faddeeva_w({x, y});
            CHECK(std::abs(got - Complex(static_cast<double>(ref.real()), static_cast<double>(ref.imag())))
                  <= 1e-13 * std::abs(got));
        }
    }
}

TEST_CASE("erfi: examples and consistency")
{
    CHECK(special::erfi(0.0) == 0.0);
    CHECK(std::abs(special::erfi(0.125) - static_cast<double>(oracle::erfi_series(0.125L))) <= 1e-16);
    CHECK(special::erfi(-0.5) == -special::erfi(0.5));
    for (double u = -3.0; u <= 3.0; u += 0.05) {
        const double ref = static_cast<double>(oracle::erfi_series(u));
        CHECK(std::abs(special::erfi(u) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
        const double via_erf = special::erf_complex({0.0, u}).imag();
        CHECK(std::abs(special::erfi(u) - via_erf) <= 1e-13 * std::max(1.0, std::abs(ref)));
    }
    CHECK_THROWS_AS(special::erfi(10.5), DomainError);
}

TEST_CASE("erf_imag_scaled: series region, symmetry and underflow-free tail")
{
    for (double x : {0.0, 0.3, -0.8, 1.5, 2.5}) {
        for (double y : {0.05, 0.25, 0.75, -0.5}) {
            const double ref = std::exp(x * x) * oracle::erf_series_d(x, y).imag();
            CHECK(std::abs(special::erf_imag_scaled(x, y) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
            CHECK(special::erf_imag_scaled(-x, y) == special::erf_imag_scaled(x, y));
            CHECK(special::erf_imag_scaled(x, -y) == -special::erf_imag_scaled(x, y));
        }
    }
    // exp(x^2) Im erf(x + iy) = 2/sqrt(pi) \int_0^y exp(t^2) cos(2 x t) dt
    for (double x : {6.0, 15.0, 40.0}) {
        const double y = 0.375;
        const long double ref = oracle::kTwoOverSqrtPi
            * oracle::simpson([&](long double t) { return std::exp(t * t) * std::cos(2.0L * x * t); }, 0.0L, y, 20000);
        const double got = special::erf_imag_scaled(x, y);
        CHECK(std::isfinite(got));
        CHECK(std::abs(got - static_cast<double>(ref)) <= 1e-12);
    }
}
