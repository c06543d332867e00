#include "lvflow/verify.hpp"

#include "lvflow/error.hpp"
#include "lvflow/lotka_volterra.hpp"
#include "lvflow/special_functions.hpp"
#include "lvflow/wigner_flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace lvflow::verify {

namespace {

using special::Complex;
using LongComplex = std::complex<long double>;

constexpr double kGridHalfWidth = 3.0;
constexpr std::array<double, 3> kAlphas{0.25, 0.5, 1.0};
constexpr std::array<double, 3> kCouplings{0.25, 1.0, 4.0};

LongComplex erf_maclaurin(LongComplex z, int terms = 200)
{
    const LongComplex minus_z2 = -z * z;
    LongComplex power = z; // (-1)^n z^(2n+1) / n!
    LongComplex sum = power;
    for (int n = 1; n < terms; ++n) {
        power *= minus_z2 / static_cast<long double>(n);
        sum += power / static_cast<long double>(2 * n + 1);
    }
    return sum * (2.0L / std::sqrt(std::numbers::pi_v<long double>));
}

long double erfi_maclaurin(long double u, int terms = 200)
{
    long double power = u;
    long double sum = u;
    for (int n = 1; n < terms; ++n) {
        power *= u * u / static_cast<long double>(n);
        sum += power / static_cast<long double>(2 * n + 1);
    }
    return sum * (2.0L / std::sqrt(std::numbers::pi_v<long double>));
}

std::vector<double> axis(int n)
{
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        out[i] = -kGridHalfWidth + 2.0 * kGridHalfWidth * i / (n - 1);
    }
    return out;
}

struct Accumulator {
    CheckResult result;

    Accumulator(std::string name, std::string description, double tolerance)
    {
        result.name = std::move(name);
        result.description = std::move(description);
        result.tolerance = tolerance;
    }

    void add(double error)
    {
        ++result.evaluations;
        // NaN must fail the check, so compare with !(<=)
        if (!(error <= result.max_error)) {
            result.max_error = std::isnan(error) ? error : std::max(result.max_error, error);
        }
    }

    CheckResult finish()
    {
        result.passed = result.evaluations > 0 && result.max_error <= result.tolerance;
        return result;
    }
};

double relative_velocity_error(Velocity series, Velocity closed)
{
    return std::hypot(series.vx - closed.vx, series.vk - closed.vk) / norm(closed);
}

Velocity series_velocity(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params, int eta_max)
{
    double sx = 0.0;
    double sk = 0.0;
    for (const auto& [tx, tk] : wigner::series_terms(p, ens, params, SeriesTruncation(eta_max))) {
        sx += tx;
        sk += tk;
    }
    return {sx, sk};
}

CurrentDivergences closed_divergences(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params,
                                      const VerifyOptions& options)
{
    CurrentDivergences d = wigner::current_divergences(p, ens, params);
    d.div_jx *= 1.0 + options.div_jx_perturbation;
    return d;
}

CheckResult check_erf_maclaurin()
{
    Accumulator acc("erf_maclaurin", "erf_complex vs 200-term long-double Maclaurin series, |z| <= 3", 1e-13);
    for (double x = -3.0; x <= 3.0; x += 0.125) {
        for (double y = -3.0; y <= 3.0; y += 0.125) {
            if (std::hypot(x, y) > 3.0) {
                continue;
            }
            const LongComplex ref = erf_maclaurin(LongComplex(x, y));
            const Complex got = special::erf_complex(Complex(x, y));
            const long double diff = std::abs(LongComplex(got.real(), got.imag()) - ref);
            acc.add(static_cast<double>(diff / std::max(1.0L, std::abs(ref))));
        }
    }
    return acc.finish();
}

CheckResult check_erf_symmetry()
{
    Accumulator acc("erf_symmetry", "erf(-z) = -erf(z) and erf(conj z) = conj erf(z), |z| <= 5", 1e-13);
    for (double x = -5.0; x <= 5.0; x += 0.25) {
        for (double y = -5.0; y <= 5.0; y += 0.25) {
            if (std::hypot(x, y) > 5.0) {
                continue;
            }
            const Complex z(x, y);
            const Complex e = special::erf_complex(z);
            const Complex odd = special::erf_complex(-z) + e;
            const Complex conj = special::erf_complex(std::conj(z)) - std::conj(e);
            acc.add(std::max({std::abs(odd.real()), std::abs(odd.imag()), std::abs(conj.real()),
                              std::abs(conj.imag())}));
        }
    }
    return acc.finish();
}

CheckResult check_erfi()
{
    Accumulator acc("erfi", "erfi vs long-double Maclaurin series and vs Im erf_complex(iu), |u| <= 3", 1e-13);
    for (double u = -3.0; u <= 3.0; u += 0.0625) {
        const double got = special::erfi(u);
        const long double ref = erfi_maclaurin(u);
        const double scale = std::max(1.0, std::abs(static_cast<double>(ref)));
        acc.add(static_cast<double>(std::abs(got - ref)) / scale);
        acc.add(std::abs(got - special::erf_complex(Complex(0.0, u)).imag()) / scale);
    }
    return acc.finish();
}

CheckResult check_hermite()
{
    Accumulator acc("hermite_derivative", "central difference of H_n vs 2 n H_(n-1), n <= 10, |u| <= 3", 1e-6);
    constexpr double h = 1e-6;
    for (int n = 1; n <= 10; ++n) {
        for (double u = -3.0; u <= 3.0; u += 0.125) {
            const double fd = (special::hermite(n, u + h) - special::hermite(n, u - h)) / (2 * h);
            const double ref = 2.0 * n * special::hermite(n - 1, u);
            acc.add(std::abs(fd - ref) / std::max(1.0, std::abs(ref)));
        }
    }
    return acc.finish();
}

CheckResult check_series_velocity(const VerifyOptions& options)
{
    Accumulator acc("series_velocity", "truncated current series / G vs closed-form quantum velocity", 1e-10);
    const std::vector<double> nodes = axis(options.grid_points);
    for (const double alpha : kAlphas) {
        const GaussianEnsemble ens(alpha);
        for (const double a : kCouplings) {
            const LVParams params(a);
            for (const double k : nodes) {
                for (const double x : nodes) {
                    const Velocity closed = wigner::quantum_velocity({x, k}, ens, params);
                    if (norm(closed) > 1e-8) {
                        const Velocity series = series_velocity({x, k}, ens, params, options.eta_max);
                        acc.add(relative_velocity_error(series, closed));
                    }
                }
            }
        }
    }
    return acc.finish();
}

CheckResult check_series_divergence(const VerifyOptions& options)
{
    Accumulator acc("series_divergence",
                    "series d_x J_x, d_k J_k vs closed forms, relative to the larger closed-form term", 1e-10);
    const std::vector<double> nodes = axis(options.grid_points);
    for (const double alpha : kAlphas) {
        const GaussianEnsemble ens(alpha);
        const double a2 = alpha * alpha;
        for (const double a : kCouplings) {
            const LVParams params(a);
            for (const double k : nodes) {
                for (const double x : nodes) {
                    const PhasePoint p{x, k};
                    const CurrentDivergences closed = closed_divergences(p, ens, params, options);
                    const CurrentDivergences series
                        = wigner::series_divergences(p, ens, params, SeriesTruncation(options.eta_max));
                    const double g = wigner::gaussian_density(p, ens);
                    // size of the two terms in each bracket; the bracket itself may cancel
                    const double scale_x
                        = 2.0 * g * std::max(std::abs(a2 * x), std::abs(std::sin(a2 * x)) * std::exp(0.25 * a2 - k));
                    const double scale_k = 2.0 * a * g
                        * std::max(std::abs(a2 * k), std::abs(std::sin(a2 * k)) * std::exp(0.25 * a2 - x));
                    if (scale_x > 0.0) {
                        acc.add(std::abs(series.div_jx - closed.div_jx) / scale_x);
                    }
                    if (scale_k > 0.0) {
                        acc.add(std::abs(series.div_jk - closed.div_jk) / scale_k);
                    }
                }
            }
        }
    }
    return acc.finish();
}

CheckResult check_finite_difference(const VerifyOptions& options)
{
    Accumulator acc("fd_consistency",
                    "central difference (h = 1e-5) of w_x G and w_k G vs closed-form divergences, absolute", 1e-6);
    constexpr double h = 1e-5;
    const std::vector<double> nodes = axis(options.grid_points);
    for (const double alpha : kAlphas) {
        const GaussianEnsemble ens(alpha);
        for (const double a : kCouplings) {
            const LVParams params(a);
            const auto jx = [&](double x, double k) {
                return wigner::quantum_velocity({x, k}, ens, params).vx * wigner::gaussian_density({x, k}, ens);
            };
            const auto jk = [&](double x, double k) {
                return wigner::quantum_velocity({x, k}, ens, params).vk * wigner::gaussian_density({x, k}, ens);
            };
            for (const double k : nodes) {
                for (const double x : nodes) {
                    const CurrentDivergences closed = closed_divergences({x, k}, ens, params, options);
                    acc.add(std::abs((jx(x + h, k) - jx(x - h, k)) / (2 * h) - closed.div_jx));
                    acc.add(std::abs((jk(x, k + h) - jk(x, k - h)) / (2 * h) - closed.div_jk));
                }
            }
        }
    }
    return acc.finish();
}

double classical_gap(double alpha, const std::vector<double>& nodes)
{
    const GaussianEnsemble ens(alpha);
    const LVParams params(1.0);
    double worst = 0.0;
    for (const double k : nodes) {
        for (const double x : nodes) {
            const Velocity w = wigner::quantum_velocity({x, k}, ens, params);
            const Velocity v = lv::classical_velocity({x, k}, params);
            worst = std::max(worst, std::hypot(w.vx - v.vx, w.vk - v.vk));
        }
    }
    return worst;
}

std::vector<CheckResult> check_classical_limit(const VerifyOptions& options)
{
    const std::vector<double> nodes = axis(options.grid_points);
    const double fine = classical_gap(1e-3, nodes);
    const double coarse = classical_gap(1e-2, nodes);
    Accumulator limit("classical_limit", "max |w - v_classical| at alpha = 1e-3, a = 1", 1e-5);
    limit.add(fine);
    Accumulator ratio("classical_limit_scaling", "|1 - gap(1e-2) / gap(1e-3) / 100| (alpha^2 scaling)", 0.2);
    ratio.add(std::abs(1.0 - coarse / fine / 100.0));
    return {limit.finish(), ratio.finish()};
}

CheckResult check_literal_residue(const VerifyOptions& options)
{
    Accumulator acc("literal_residue", "imaginary residue of the unreduced two-erf velocity", 1e-12);
    const std::vector<double> nodes = axis(options.grid_points);
    for (const double alpha : kAlphas) {
        const GaussianEnsemble ens(alpha);
        for (const double a : kCouplings) {
            const LVParams params(a);
            for (const double k : nodes) {
                for (const double x : nodes) {
                    const LiteralVelocity lit = wigner::quantum_velocity_literal({x, k}, ens, params);
                    acc.add(std::max(std::abs(lit.wx.imag()), std::abs(lit.wk.imag())));
                }
            }
        }
    }
    return acc.finish();
}

CheckResult check_origin_reduction()
{
    Accumulator acc("origin_reduction", "w_x(0, 0) vs 1 - (sqrt(pi) / alpha) erfi(alpha / 2)", 1e-12);
    for (const double alpha : {1e-3, 1e-2, 0.25, 0.5, 1.0, 1.5, 2.0}) {
        const GaussianEnsemble ens(alpha);
        const double wx = wigner::quantum_velocity({0.0, 0.0}, ens, LVParams(1.0)).vx;
        const long double ref
            = 1.0L - std::sqrt(std::numbers::pi_v<long double>) / alpha * erfi_maclaurin(0.5L * alpha);
        acc.add(static_cast<double>(std::abs(wx - ref)));
    }
    return acc.finish();
}

std::vector<ConvergencePoint> convergence_curve(const VerifyOptions& options)
{
    const GaussianEnsemble ens(1.0);
    const LVParams params(1.0);
    const std::vector<double> nodes = axis(options.grid_points);
    std::vector<ConvergencePoint> out;
    for (int eta = 0; eta <= options.eta_max; ++eta) {
        double worst = 0.0;
        for (const double k : nodes) {
            for (const double x : nodes) {
                const Velocity closed = wigner::quantum_velocity({x, k}, ens, params);
                if (norm(closed) > 1e-8) {
                    worst = std::max(worst, relative_velocity_error(series_velocity({x, k}, ens, params, eta), closed));
                }
            }
        }
        out.push_back({eta, worst});
    }
    return out;
}

} // namespace

VerifyReport run(const VerifyOptions& options)
{
    if (options.grid_points < 2) {
        throw DomainError("verify grid needs at least 2 points per axis");
    }
    SeriesTruncation{options.eta_max};
    if (!std::isfinite(options.div_jx_perturbation)) {
        throw DomainError("perturbation must be finite");
    }

    VerifyReport report;
    report.checks.push_back(check_erf_maclaurin());
    report.checks.push_back(check_erf_symmetry());
    report.checks.push_back(check_erfi());
    report.checks.push_back(check_hermite());
    report.checks.push_back(check_series_velocity(options));
    report.checks.push_back(check_series_divergence(options));
    report.checks.push_back(check_finite_difference(options));
    for (CheckResult& c : check_classical_limit(options)) {
        report.checks.push_back(std::move(c));
    }
    report.checks.push_back(check_literal_residue(options));
    report.checks.push_back(check_origin_reduction());
    report.convergence = convergence_curve(options);
    report.validity_note = "series checks cover |x|, |k| <= 3; the truncated series is trusted only for "
                           "|x|, |k| <= 5 / alpha, beyond which Hermite growth outpaces the factorials at eta_max = "
        + std::to_string(options.eta_max);
    report.all_passed = std::all_of(report.checks.begin(), report.checks.end(),
                                    [](const CheckResult& c) { return c.passed; });
    return report;
}

} // namespace lvflow::verify
