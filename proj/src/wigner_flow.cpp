#include "lvflow/wigner_flow.hpp"

#include "lvflow/error.hpp"
#include "lvflow/parallel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lvflow {

GaussianEnsemble::GaussianEnsemble(double alpha)
    : alpha_(alpha)
{
    if (!std::isfinite(alpha) || alpha <= 0.0) {
        throw DomainError("gaussian spreading alpha must be finite and > 0, got " + std::to_string(alpha));
    }
}

SeriesTruncation::SeriesTruncation(int eta_max)
    : eta_max_(eta_max)
{
    if (eta_max < 0 || eta_max > kMaxEta) {
        throw DomainError("series truncation eta_max must lie in [0, " + std::to_string(kMaxEta) + "], got "
                          + std::to_string(eta_max));
    }
}

void GridSpec::validate() const
{
    if (resolution < 2) {
        throw DomainError("grid resolution must be >= 2");
    }
    for (const Interval& r : {x_range, k_range}) {
        if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.hi > r.lo)) {
            throw DomainError("grid range must be finite with hi > lo");
        }
    }
}

double GridSpec::x_at(int i) const
{
    return x_range.lo + x_range.width() * i / (resolution - 1);
}

double GridSpec::k_at(int j) const
{
    return k_range.lo + k_range.width() * j / (resolution - 1);
}

double GridSpec::cell_area() const
{
    return x_range.width() / (resolution - 1) * (k_range.width() / (resolution - 1));
}

} // namespace lvflow

namespace lvflow::wigner {

namespace {

double density_prefactor(const GaussianEnsemble& ens)
{
    return ens.alpha() * ens.alpha() / std::numbers::pi;
}

// The bracket B_x with d_x J_x = B_x G, written so that no factor of G is
// divided out: sin(alpha^2 x) exp(alpha^2/4 - k) G is evaluated as one exponent.
struct Brackets {
    double jx_linear;  // -2 alpha^2 x
    double jx_wave;    // 2 sin(alpha^2 x) exp(alpha^2 / 4 - k)
    double jk_linear;  // 2 a alpha^2 k
    double jk_wave;    // -2 a sin(alpha^2 k) exp(alpha^2 / 4 - x)
};

Brackets brackets(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params)
{
    const double a2 = ens.alpha() * ens.alpha();
    const double a = params.a();
    return {
        -2.0 * a2 * p.x,
        2.0 * std::sin(a2 * p.x) * std::exp(0.25 * a2 - p.k),
        2.0 * a * a2 * p.k,
        -2.0 * a * std::sin(a2 * p.k) * std::exp(0.25 * a2 - p.x),
    };
}

} // namespace

double gaussian_density(PhasePoint p, const GaussianEnsemble& ens)
{
    const double a2 = ens.alpha() * ens.alpha();
    return density_prefactor(ens) * std::exp(-a2 * (p.x * p.x + p.k * p.k));
}

double velocity_kernel(double u, const GaussianEnsemble& ens)
{
    const double alpha = ens.alpha();
    return std::sqrt(std::numbers::pi) / alpha * special::erf_imag_scaled(alpha * u, 0.5 * alpha);
}

CurrentDivergences current_divergences(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params)
{
    const double a2 = ens.alpha() * ens.alpha();
    const double a = params.a();
    const double prefactor = density_prefactor(ens);
    const double r2 = p.x * p.x + p.k * p.k;
    const double g = prefactor * std::exp(-a2 * r2);
    const double shifted_x = prefactor * std::exp(0.25 * a2 - p.k - a2 * r2);
    const double shifted_k = prefactor * std::exp(0.25 * a2 - p.x - a2 * r2);
    return {
        -2.0 * (a2 * p.x * g - std::sin(a2 * p.x) * shifted_x),
        2.0 * a * (a2 * p.k * g - std::sin(a2 * p.k) * shifted_k),
    };
}

Velocity quantum_velocity(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params)
{
    const double kx = velocity_kernel(p.x, ens);
    const double kk = velocity_kernel(p.k, ens);
    return {1.0 - std::exp(-p.k) * kx, -params.a() * (1.0 - std::exp(-p.x) * kk)};
}

LiteralVelocity quantum_velocity_literal(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params)
{
    using special::Complex;
    const double alpha = ens.alpha();
    const Complex coefficient(0.0, std::sqrt(std::numbers::pi) / (2.0 * alpha));
    const auto component = [&](double u, double v) {
        const Complex difference = special::erf_complex(Complex(alpha * u, -0.5 * alpha))
            - special::erf_complex(Complex(alpha * u, 0.5 * alpha));
        return 1.0 - coefficient * std::exp(-(v - alpha * alpha * u * u)) * difference;
    };
    return {component(p.x, p.k), -params.a() * component(p.k, p.x)};
}

std::vector<std::pair<double, double>> series_terms(PhasePoint p, const GaussianEnsemble& ens,
                                                    const LVParams& params, SeriesTruncation trunc)
{
    const int n = trunc.eta_max();
    const double alpha = ens.alpha();
    std::vector<double> hx(2 * n + 1);
    std::vector<double> hk(2 * n + 1);
    special::hermite_sequence(alpha * p.x, hx);
    special::hermite_sequence(alpha * p.k, hk);

    // (i/2)^(2 eta) alpha^(2 eta) / (2 eta + 1)! built incrementally
    const double ratio = -0.25 * alpha * alpha;
    double coefficient = 1.0;
    std::vector<std::pair<double, double>> terms;
    terms.reserve(n + 1);
    for (int eta = 0; eta <= n; ++eta) {
        if (eta > 0) {
            coefficient *= ratio / ((2.0 * eta) * (2.0 * eta + 1.0));
        }
        const double tx = coefficient * lv::odd_derivative_k(p, eta) * hx[2 * eta];
        const double tk = -coefficient * lv::odd_derivative_x(p, params, eta) * hk[2 * eta];
        terms.emplace_back(tx, tk);
    }
    return terms;
}

SeriesCurrents series_currents(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params,
                               SeriesTruncation trunc)
{
    double sx = 0.0;
    double sk = 0.0;
    for (const auto& [tx, tk] : series_terms(p, ens, params, trunc)) {
        sx += tx;
        sk += tk;
    }
    const double g = gaussian_density(p, ens);
    return {sx * g, sk * g};
}

CurrentDivergences series_divergences(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params,
                                      SeriesTruncation trunc)
{
    const int n = trunc.eta_max();
    const double alpha = ens.alpha();
    std::vector<double> hx(2 * n + 2);
    std::vector<double> hk(2 * n + 2);
    special::hermite_sequence(alpha * p.x, hx);
    special::hermite_sequence(alpha * p.k, hk);

    // d^(2 eta + 1) G / d chi^(2 eta + 1) = -alpha^(2 eta + 1) H_(2 eta + 1)(alpha chi) G
    const double ratio = -0.25 * alpha * alpha;
    double coefficient = alpha;
    double sx = 0.0;
    double sk = 0.0;
    for (int eta = 0; eta <= n; ++eta) {
        if (eta > 0) {
            coefficient *= ratio / ((2.0 * eta) * (2.0 * eta + 1.0));
        }
        sx -= coefficient * lv::odd_derivative_k(p, eta) * hx[2 * eta + 1];
        sk += coefficient * lv::odd_derivative_x(p, params, eta) * hk[2 * eta + 1];
    }
    const double g = gaussian_density(p, ens);
    return {sx * g, sk * g};
}

DivergenceQuantifiers divergence_quantifiers(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params)
{
    const CurrentDivergences div = current_divergences(p, ens, params);
    DivergenceQuantifiers out;
    out.div_j = div.div_jx + div.div_jk;
    if (gaussian_density(p, ens) < kDensityFloor) {
        return out;
    }
    const Velocity w = quantum_velocity(p, ens, params);
    const Brackets b = brackets(p, ens, params);
    const double a2 = ens.alpha() * ens.alpha();
    // div J / G taken from the brackets directly, not by dividing by G
    const double div_j_over_g = (b.jx_linear + b.jx_wave) + (b.jk_linear + b.jk_wave);
    out.div_w = div_j_over_g + 2.0 * a2 * (p.x * w.vx + p.k * w.vk);
    out.div_w_defined = std::isfinite(out.div_w);
    return out;
}

FlowSample flow_sample(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params)
{
    const CurrentDivergences div = current_divergences(p, ens, params);
    const DivergenceQuantifiers q = divergence_quantifiers(p, ens, params);
    FlowSample s;
    s.point = p;
    s.density = gaussian_density(p, ens);
    s.w = quantum_velocity(p, ens, params);
    s.div_jx = div.div_jx;
    s.div_jk = div.div_jk;
    s.div_j = q.div_j;
    s.div_w = q.div_w;
    s.div_w_defined = q.div_w_defined;
    return s;
}

std::vector<FlowSample> flow_grid(const GridSpec& grid, const GaussianEnsemble& ens, const LVParams& params)
{
    grid.validate();
    const auto n = static_cast<std::size_t>(grid.resolution);
    std::vector<FlowSample> samples(n * n);
    parallel_for(n, [&](std::size_t j) {
        const double k = grid.k_at(static_cast<int>(j));
        for (std::size_t i = 0; i < n; ++i) {
            samples[j * n + i] = flow_sample({grid.x_at(static_cast<int>(i)), k}, ens, params);
        }
    });
    return samples;
}

} // namespace lvflow::wigner
