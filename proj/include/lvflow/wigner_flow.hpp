#pragma once

#include "lvflow/lotka_volterra.hpp"
#include "lvflow/special_functions.hpp"

#include <utility>
#include <vector>

namespace lvflow {

/// Origin-centred Gaussian ensemble G(x, k) = (alpha^2 / pi) exp(-alpha^2 (x^2 + k^2)).
class GaussianEnsemble {
public:
    /// Throws DomainError unless alpha is finite and positive.
    explicit GaussianEnsemble(double alpha);

    double alpha() const { return alpha_; }

private:
    double alpha_;
};

/// Highest series index eta retained in the Wigner-current expansion.
class SeriesTruncation {
public:
    static constexpr int kMaxEta = 60;

    /// Throws DomainError for eta_max < 0 or eta_max > kMaxEta.
    explicit SeriesTruncation(int eta_max);

    int eta_max() const { return eta_max_; }

private:
    int eta_max_;
};

/// Closed real interval [lo, hi].
struct Interval {
    double lo = -3.0;
    double hi = 3.0;

    double width() const { return hi - lo; }
    bool contains(double v) const { return v >= lo && v <= hi; }
};

/// Below this density the Liouvillianity quantifier is reported undefined.
inline constexpr double kDensityFloor = 1e-300;

/// Every field quantity at one phase-space point.
struct FlowSample {
    PhasePoint point;
    double density = 0.0;
    Velocity w;          ///< quantum velocity
    double div_jx = 0.0; ///< d_x J_x
    double div_jk = 0.0; ///< d_k J_k
    double div_j = 0.0;  ///< stationarity quantifier, div_jx + div_jk
    double div_w = 0.0;  ///< Liouvillianity quantifier, meaningful only if div_w_defined
    bool div_w_defined = false;
};

struct CurrentDivergences {
    double div_jx = 0.0;
    double div_jk = 0.0;
};

struct SeriesCurrents {
    double jx = 0.0;
    double jk = 0.0;
};

struct DivergenceQuantifiers {
    double div_j = 0.0;
    double div_w = 0.0;
    bool div_w_defined = false;
};

/// Quantum velocity in the unreduced two-erf form; the imaginary parts are
/// rounding residue and exist only for cross-checking.
struct LiteralVelocity {
    special::Complex wx;
    special::Complex wk;
};

/// Regular grid of (resolution x resolution) nodes including both endpoints.
struct GridSpec {
    Interval x_range;
    Interval k_range;
    int resolution = 256;

    /// Throws DomainError for resolution < 2 or empty / non-finite ranges.
    void validate() const;
    double x_at(int i) const;
    double k_at(int j) const;
    double cell_area() const;
};

} // namespace lvflow

namespace lvflow::wigner {

double gaussian_density(PhasePoint p, const GaussianEnsemble& ens);

/// (sqrt(pi) / alpha) exp(alpha^2 u^2) Im erf(alpha (u + i/2)).
///
/// The quantum velocity factorises as w_x = 1 - e^-k K(x), w_k = -a (1 - e^-x K(k)),
/// and K -> 1 as alpha -> 0.
double velocity_kernel(double u, const GaussianEnsemble& ens);

/// Closed-form d_x J_x and d_k J_k of the Gaussian-ensemble Wigner currents.
CurrentDivergences current_divergences(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params);

/// Closed-form quantum velocity w = J / G, reduced to Im erf so it is real by construction.
Velocity quantum_velocity(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params);

/// The same velocity through the difference erf(alpha(u - i/2)) - erf(alpha(u + i/2)).
/// Overflows once alpha^2 u^2 approaches ~700; intended for verification only.
LiteralVelocity quantum_velocity_literal(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params);

/// Individual series terms of (J_x / G, J_k / G), index eta = 0 .. eta_max.
std::vector<std::pair<double, double>> series_terms(PhasePoint p, const GaussianEnsemble& ens,
                                                    const LVParams& params, SeriesTruncation trunc);

/// Partial sums of the Wigner-current series with W replaced by the ensemble density.
SeriesCurrents series_currents(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params,
                               SeriesTruncation trunc);

/// Partial sums of the series for (d_x J_x, d_k J_k), built from odd Gaussian
/// derivatives. Independent route to current_divergences.
CurrentDivergences series_divergences(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params,
                                      SeriesTruncation trunc);

/// div J and div w = div J / G + 2 alpha^2 (x w_x + k w_k).
DivergenceQuantifiers divergence_quantifiers(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params);

FlowSample flow_sample(PhasePoint p, const GaussianEnsemble& ens, const LVParams& params);

/// flow_sample at every node of `grid`, row-major with x varying fastest.
std::vector<FlowSample> flow_grid(const GridSpec& grid, const GaussianEnsemble& ens, const LVParams& params);

} // namespace lvflow::wigner
