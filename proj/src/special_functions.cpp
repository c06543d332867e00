#include "lvflow/special_functions.hpp"

#include "lvflow/error.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace lvflow::special {

namespace {

constexpr double kStep = 0.5;
constexpr int kNodes = 15; // nodes up to t = 7, exp(-49) ~ 5e-22
constexpr double kPoleStrip = std::numbers::pi / kStep;
constexpr double kMaclaurinRadius = 1.0;
constexpr double kAsymptoticRadius = 1e6;

struct NodeTable {
    std::array<double, kNodes> t2{};
    std::array<double, kNodes> weight{};
};

NodeTable make_nodes(double offset)
{
    NodeTable table;
    for (int n = 0; n < kNodes; ++n) {
        const double t = (n + offset) * kStep;
        table.t2[n] = t * t;
        table.weight[n] = std::exp(-t * t);
    }
    return table;
}

const NodeTable& integer_nodes()
{
    static const NodeTable table = make_nodes(0.0);
    return table;
}

const NodeTable& half_nodes()
{
    static const NodeTable table = make_nodes(0.5);
    return table;
}

// w(z) for Im z >= 0.
Complex faddeeva_upper(Complex z)
{
    using std::numbers::pi;
    using std::numbers::inv_sqrtpi;
    if (std::abs(z) > kAsymptoticRadius) {
        const Complex inv = 1.0 / z;
        return Complex(0.0, inv_sqrtpi) * inv * (1.0 + 0.5 * inv * inv);
    }

    const double x = z.real();
    const double frac = x / kStep - std::floor(x / kStep);
    const bool shifted = frac < 0.25 || frac > 0.75;

    // Symmetric node pairs: 1/(z - t) + 1/(z + t) = 2z / (z^2 - t^2).
    const Complex z2 = z * z;
    Complex sum = 0.0;
    if (shifted) {
        const NodeTable& nodes = half_nodes();
        for (int n = kNodes - 1; n >= 0; --n) {
            sum += nodes.weight[n] / (z2 - nodes.t2[n]);
        }
        sum *= 2.0 * z;
    } else {
        const NodeTable& nodes = integer_nodes();
        for (int n = kNodes - 1; n >= 1; --n) {
            sum += nodes.weight[n] / (z2 - nodes.t2[n]);
        }
        sum = 2.0 * z * sum + 1.0 / z;
    }
    Complex w = Complex(0.0, kStep / pi) * sum;

    if (z.imag() < kPoleStrip) {
        const Complex e = std::exp(Complex(0.0, -2.0 * pi / kStep) * z);
        const Complex gauss = std::exp(-z2);
        w += shifted ? 2.0 * gauss / (1.0 + e) : 2.0 * gauss / (1.0 - e);
    }
    return w;
}

Complex erf_maclaurin(Complex z)
{
    const Complex minus_z2 = -z * z;
    Complex term = z;
    Complex sum = z;
    for (int n = 1; n < 60; ++n) {
        term *= minus_z2 / static_cast<double>(n);
        const Complex contribution = term / static_cast<double>(2 * n + 1);
        sum += contribution;
        if (std::abs(contribution) <= 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return std::numbers::inv_sqrtpi * 2.0 * sum;
}

// erf on the closed first quadrant.
Complex erf_first_quadrant(double x, double y)
{
    if (x == 0.0) {
        return {0.0, erfi(y)};
    }
    const Complex z(x, y);
    if (std::abs(z) < kMaclaurinRadius) {
        return erf_maclaurin(z);
    }
    const double decay = std::exp(y * y - x * x);
    const Complex gauss(decay * std::cos(2.0 * x * y), -decay * std::sin(2.0 * x * y));
    return 1.0 - gauss * faddeeva_upper(Complex(-y, x));
}

void check_argument(Complex z, const char* what)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError(std::string(what) + ": non-finite argument");
    }
    if (std::abs(z.imag()) > kMaxErfImag) {
        throw DomainError(std::string(what) + ": |Im z| = " + std::to_string(std::abs(z.imag()))
                          + " exceeds the validated bound " + std::to_string(kMaxErfImag));
    }
}

} // namespace

double hermite(int n, double u)
{
    if (n < 0 || n > kMaxHermiteOrder) {
        throw DomainError("hermite: order " + std::to_string(n) + " outside [0, "
                          + std::to_string(kMaxHermiteOrder) + "]");
    }
    double previous = 1.0;
    if (n == 0) {
        return previous;
    }
    double current = 2.0 * u;
    for (int m = 1; m < n; ++m) {
        const double next = 2.0 * u * current - 2.0 * m * previous;
        previous = current;
        current = next;
    }
    return current;
}

void hermite_sequence(double u, std::span<double> out)
{
    if (out.size() > static_cast<std::size_t>(kMaxHermiteOrder) + 1) {
        throw DomainError("hermite_sequence: requested order exceeds " + std::to_string(kMaxHermiteOrder));
    }
    if (out.empty()) {
        return;
    }
    out[0] = 1.0;
    if (out.size() == 1) {
        return;
    }
    out[1] = 2.0 * u;
    for (std::size_t m = 1; m + 1 < out.size(); ++m) {
        out[m + 1] = 2.0 * u * out[m] - 2.0 * static_cast<double>(m) * out[m - 1];
    }
}

Complex faddeeva_w(Complex z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw DomainError("faddeeva_w: non-finite argument");
    }
    if (z.imag() >= 0.0) {
        return faddeeva_upper(z);
    }
    return 2.0 * std::exp(-z * z) - faddeeva_upper(-z);
}

Complex erf_complex(Complex z)
{
    check_argument(z, "erf_complex");
    const double sx = std::signbit(z.real()) ? -1.0 : 1.0;
    const double sy = std::signbit(z.imag()) ? -1.0 : 1.0;
    const Complex q = erf_first_quadrant(std::abs(z.real()), std::abs(z.imag()));
    return {sx * q.real(), sy * q.imag()};
}

double erfi(double u)
{
    check_argument(Complex(0.0, u), "erfi");
    const double sign = std::signbit(u) ? -1.0 : 1.0;
    const double y = std::abs(u);
    if (y < kMaclaurinRadius) {
        // (2/sqrt(pi)) sum u^(2n+1) / (n! (2n+1)), all terms positive
        const double y2 = y * y;
        double term = y;
        double sum = y;
        for (int n = 1; n < 60; ++n) {
            term *= y2 / n;
            const double contribution = term / (2 * n + 1);
            sum += contribution;
            if (contribution <= 1e-17 * sum) {
                break;
            }
        }
        return sign * 2.0 * std::numbers::inv_sqrtpi * sum;
    }
    // erf(iy) = 1 - exp(y^2) w(-y); the real parts cancel exactly.
    return -sign * std::exp(y * y) * faddeeva_upper(Complex(-y, 0.0)).imag();
}

double erf_imag_scaled(double x, double y)
{
    check_argument(Complex(x, y), "erf_imag_scaled");
    const double sign = std::signbit(y) ? -1.0 : 1.0;
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (std::hypot(ax, ay) < kMaclaurinRadius) {
        return sign * std::exp(ax * ax) * erf_maclaurin(Complex(ax, ay)).imag();
    }
    // exp(x^2) Im[1 - exp(-z^2) w(iz)] = -Im[exp(y^2) exp(-2ixy) w(-y + ix)]
    const double phase = 2.0 * ax * ay;
    const Complex rotation = std::exp(ay * ay) * Complex(std::cos(phase), -std::sin(phase));
    return -sign * (rotation * faddeeva_upper(Complex(-ay, ax))).imag();
}

} // namespace lvflow::special
