#pragma once

#include "lvflow/error.hpp"
#include "lvflow/special_functions.hpp"
#include "lvflow/vector_field.hpp"
#include "lvflow/wigner_flow.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lvflow {

/// Grid, range and |w| threshold for equilibrium scans.
struct ScanConfig {
    Interval x_range{-3.0, 3.0};
    Interval k_range{-3.0, 3.0};
    int resolution = 256;
    double speed_threshold = 0.07;

    /// Throws DomainError for resolution < 16, speed_threshold <= 0 or bad ranges.
    void validate() const;
    GridSpec grid() const { return {x_range, k_range, resolution}; }
};

enum class CriticalKind { vortex_ccw, vortex_cw, saddle, quasi_stable_focus, node, degenerate };

std::string_view to_string(CriticalKind kind);

struct CriticalPoint {
    PhasePoint location;
    double speed = 0.0; ///< |w| at location
    CriticalKind kind = CriticalKind::degenerate;
    int winding = 0;
    std::array<special::Complex, 2> jacobian_eigs{};
    bool converged = false;
};

struct GridNode {
    int i = 0; ///< x index
    int j = 0; ///< k index

    friend bool operator==(const GridNode&, const GridNode&) = default;
};

/// One 4-connected component of the low-speed envelope.
struct EnvelopeRegion {
    std::vector<GridNode> member_nodes; ///< raster order (j, then i)
    int component_id = 0;
    double area_estimate = 0.0;
    GridNode slowest_node; ///< member with the smallest |w|
};

/// Result of the damped Newton search for a zero of the field.
struct RefinedZero {
    PhasePoint location;
    double speed = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Winding loop passes through (or numerically onto) a zero of the field.
class LoopThroughZeroError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Winding loop still under-sampled at the maximum sample count.
class WindingResolutionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Field values on a scan grid, row-major with x fastest.
struct SpeedGrid {
    ScanConfig cfg;
    std::vector<Velocity> w;

    const Velocity& at(int i, int j) const { return w[static_cast<std::size_t>(j) * cfg.resolution + i]; }
};

struct AlphaSummary {
    double alpha = 0.0;
    int n_components = 0;
    std::vector<CriticalPoint> zeros;  ///< converged zeros inside the scan range, sorted by (x, k)
    int boundary_winding = 0;          ///< winding of the scan-range boundary
    std::optional<double> dominant_displacement; ///< |location| of the zero closest to the origin
    std::optional<std::string> error;  ///< set when this alpha failed; other fields then empty
};

/// Zero census of one field over one scan window.
struct Census {
    std::vector<EnvelopeRegion> regions;
    std::vector<CriticalPoint> zeros;
    int boundary_winding = 0;
};

} // namespace lvflow

namespace lvflow::critical {

inline constexpr double kDefaultRefineTol = 1e-10;
inline constexpr int kMaxWindingSamples = 1024;

SpeedGrid evaluate_grid(const ScanConfig& cfg, const VectorField& field);

/// Discrete Poincare index of grid cell (i, j) .. (i+1, j+1); 0 if a corner has zero speed.
int cell_index(const SpeedGrid& grid, int i, int j);

/// Envelope regions: nodes with |w| < speed_threshold, together with the four
/// corners of every cell whose discrete index is nonzero (so a zero whose
/// low-speed pocket is thinner than one cell still owns a region), labelled
/// by 4-connected union-find. Component ids follow raster order.
std::vector<EnvelopeRegion> scan_envelope(const SpeedGrid& grid);
std::vector<EnvelopeRegion> scan_envelope(const ScanConfig& cfg, const VectorField& field);
std::vector<EnvelopeRegion> scan_envelope(const ScanConfig& cfg, const GaussianEnsemble& ens, const LVParams& params);

/// Damped Newton iteration with a central-difference Jacobian (h = 1e-6),
/// stopping at |w| <= tol or after 50 iterations. `converged` is true only
/// when the final |w| <= tol.
RefinedZero refine_zero(PhasePoint seed, const VectorField& field, double tol = kDefaultRefineTol);

/// Winding number of the field along a circle: accumulated angle / 2 pi.
/// Doubles the sample count (up to kMaxWindingSamples) while any adjacent
/// angle jump exceeds pi / 2.
int winding_number(PhasePoint center, double radius, const VectorField& field, int samples = 64);

/// Winding number along the boundary of a rectangle, traversed counter-clockwise.
int boundary_winding(const Interval& x_range, const Interval& k_range, const VectorField& field,
                     int samples_per_side = 256);

/// Central-difference Jacobian [[dwx/dx, dwx/dk], [dwk/dx, dwk/dk]].
std::array<std::array<double, 2>, 2> jacobian(PhasePoint p, const VectorField& field, double h = 1e-6);

/// Classify a refined zero from its Jacobian, cross-checked against the
/// winding number on a small circle. Unconverged candidates, singular
/// Jacobians and signature/winding disagreements give kind = degenerate.
/// `loop_radius` defaults to 1e-3.
CriticalPoint classify(const RefinedZero& candidate, const VectorField& field, double loop_radius = 1e-3);

/// Scan, refine from every envelope and nonzero-index seed, deduplicate and classify.
Census census(const ScanConfig& cfg, const VectorField& field);

/// census() for every alpha; a failing alpha records its error and the sweep continues.
std::vector<AlphaSummary> alpha_sweep(const std::vector<double>& alphas, const ScanConfig& cfg,
                                      const LVParams& params);

} // namespace lvflow::critical
