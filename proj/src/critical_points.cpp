#include "lvflow/critical_points.hpp"

#include "lvflow/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

namespace lvflow {

void ScanConfig::validate() const
{
    if (resolution < 16) {
        throw DomainError("scan resolution must be >= 16");
    }
    if (!std::isfinite(speed_threshold) || speed_threshold <= 0.0) {
        throw DomainError("speed threshold must be finite and > 0");
    }
    grid().validate();
}

std::string_view to_string(CriticalKind kind)
{
    switch (kind) {
    case CriticalKind::vortex_ccw:
        return "vortex_ccw";
    case CriticalKind::vortex_cw:
        return "vortex_cw";
    case CriticalKind::saddle:
        return "saddle";
    case CriticalKind::quasi_stable_focus:
        return "quasi_stable_focus";
    case CriticalKind::node:
        return "node";
    case CriticalKind::degenerate:
        return "degenerate";
    }
    return "degenerate";
}

} // namespace lvflow

namespace lvflow::critical {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMaxJump = 0.5 * std::numbers::pi;
constexpr double kZeroSpeed = 1e-14;
constexpr int kMaxBoundarySamples = 16384;
constexpr double kFlatJacobian = 1e-8; // largest |J| entry below this counts as singular

double wrap_angle(double d)
{
    while (d > std::numbers::pi) {
        d -= kTwoPi;
    }
    while (d <= -std::numbers::pi) {
        d += kTwoPi;
    }
    return d;
}

double angle_of(Velocity v)
{
    return std::atan2(v.vk, v.vx);
}

struct DisjointSets {
    explicit DisjointSets(std::size_t n)
        : parent(n)
    {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }

    std::size_t find(std::size_t i)
    {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b) {
            // smaller root wins so roots stay in raster order
            parent[std::max(a, b)] = std::min(a, b);
        }
    }

    std::vector<std::size_t> parent;
};

// Accumulated turning of the field along a closed polyline given by `point(m)`,
// m = 0 .. n (point(n) == point(0)). Returns nullopt when under-sampled.
template <typename PointAt>
std::optional<int> accumulate_winding(int n, const PointAt& point, const VectorField& field)
{
    double total = 0.0;
    double previous = 0.0;
    for (int m = 0; m <= n; ++m) {
        const Velocity v = field(point(m));
        const double speed = norm(v);
        if (!std::isfinite(speed)) {
            throw NumericalError("winding loop: non-finite field value");
        }
        if (speed < kZeroSpeed) {
            throw LoopThroughZeroError("winding loop passes through a zero of the field");
        }
        const double angle = angle_of(v);
        if (m > 0) {
            const double d = wrap_angle(angle - previous);
            if (std::abs(d) > kMaxJump) {
                return std::nullopt;
            }
            total += d;
        }
        previous = angle;
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

} // namespace

SpeedGrid evaluate_grid(const ScanConfig& cfg, const VectorField& field)
{
    cfg.validate();
    const GridSpec grid = cfg.grid();
    const auto n = static_cast<std::size_t>(cfg.resolution);
    SpeedGrid out{cfg, std::vector<Velocity>(n * n)};
    parallel_for(n, [&](std::size_t j) {
        const double k = grid.k_at(static_cast<int>(j));
        for (std::size_t i = 0; i < n; ++i) {
            out.w[j * n + i] = field({grid.x_at(static_cast<int>(i)), k});
        }
    });
    return out;
}

int cell_index(const SpeedGrid& grid, int i, int j)
{
    const std::array<Velocity, 5> corners{grid.at(i, j), grid.at(i + 1, j), grid.at(i + 1, j + 1), grid.at(i, j + 1),
                                          grid.at(i, j)};
    double total = 0.0;
    for (std::size_t c = 0; c < 4; ++c) {
        if (norm(corners[c]) == 0.0 || !std::isfinite(norm(corners[c]))) {
            return 0;
        }
        total += wrap_angle(angle_of(corners[c + 1]) - angle_of(corners[c]));
    }
    return static_cast<int>(std::lround(total / kTwoPi));
}

std::vector<EnvelopeRegion> scan_envelope(const SpeedGrid& grid)
{
    const int n = grid.cfg.resolution;
    const auto index = [n](int i, int j) { return static_cast<std::size_t>(j) * n + i; };
    std::vector<char> member(static_cast<std::size_t>(n) * n, 0);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            member[index(i, j)] = norm(grid.at(i, j)) < grid.cfg.speed_threshold;
        }
    }
    for (int j = 0; j + 1 < n; ++j) {
        for (int i = 0; i + 1 < n; ++i) {
            if (cell_index(grid, i, j) != 0) {
                member[index(i, j)] = member[index(i + 1, j)] = member[index(i, j + 1)]
                    = member[index(i + 1, j + 1)] = 1;
            }
        }
    }

    DisjointSets sets(member.size());
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (!member[index(i, j)]) {
                continue;
            }
            if (i > 0 && member[index(i - 1, j)]) {
                sets.unite(index(i, j), index(i - 1, j));
            }
            if (j > 0 && member[index(i, j - 1)]) {
                sets.unite(index(i, j), index(i, j - 1));
            }
        }
    }

    const double cell_area = grid.cfg.grid().cell_area();
    std::map<std::size_t, std::size_t> region_of_root;
    std::vector<EnvelopeRegion> regions;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (!member[index(i, j)]) {
                continue;
            }
            const std::size_t root = sets.find(index(i, j));
            auto [it, inserted] = region_of_root.try_emplace(root, regions.size());
            if (inserted) {
                EnvelopeRegion region;
                region.component_id = static_cast<int>(regions.size());
                region.slowest_node = {i, j};
                regions.push_back(std::move(region));
            }
            EnvelopeRegion& region = regions[it->second];
            region.member_nodes.push_back({i, j});
            if (norm(grid.at(i, j)) < norm(grid.at(region.slowest_node.i, region.slowest_node.j))) {
                region.slowest_node = {i, j};
            }
        }
    }
    for (EnvelopeRegion& region : regions) {
        region.area_estimate = static_cast<double>(region.member_nodes.size()) * cell_area;
    }
    return regions;
}

std::vector<EnvelopeRegion> scan_envelope(const ScanConfig& cfg, const VectorField& field)
{
    return scan_envelope(evaluate_grid(cfg, field));
}

std::vector<EnvelopeRegion> scan_envelope(const ScanConfig& cfg, const GaussianEnsemble& ens, const LVParams& params)
{
    return scan_envelope(cfg, quantum_field(ens, params));
}

std::array<std::array<double, 2>, 2> jacobian(PhasePoint p, const VectorField& field, double h)
{
    const Velocity xp = field({p.x + h, p.k});
    const Velocity xm = field({p.x - h, p.k});
    const Velocity kp = field({p.x, p.k + h});
    const Velocity km = field({p.x, p.k - h});
    return {{{(xp.vx - xm.vx) / (2 * h), (kp.vx - km.vx) / (2 * h)},
             {(xp.vk - xm.vk) / (2 * h), (kp.vk - km.vk) / (2 * h)}}};
}

RefinedZero refine_zero(PhasePoint seed, const VectorField& field, double tol)
{
    if (!std::isfinite(tol) || tol <= 0.0) {
        throw DomainError("refine_zero: tolerance must be > 0");
    }
    RefinedZero out{seed, norm(field(seed)), false, 0};
    if (!std::isfinite(out.speed)) {
        return out;
    }
    for (int it = 0; it < 50 && out.speed > tol; ++it) {
        out.iterations = it + 1;
        const Velocity w = field(out.location);
        const auto J = jacobian(out.location, field);
        const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (det == 0.0 || !std::isfinite(det)) {
            break;
        }
        const double dx = -(J[1][1] * w.vx - J[0][1] * w.vk) / det;
        const double dk = -(-J[1][0] * w.vx + J[0][0] * w.vk) / det;

        bool improved = false;
        double damping = 1.0;
        for (int halving = 0; halving < 40; ++halving, damping *= 0.5) {
            const PhasePoint trial{out.location.x + damping * dx, out.location.k + damping * dk};
            const double speed = norm(field(trial));
            if (std::isfinite(speed) && speed < out.speed) {
                out.location = trial;
                out.speed = speed;
                improved = true;
                break;
            }
        }
        if (!improved) {
            break;
        }
    }
    out.converged = out.speed <= tol;
    return out;
}

int winding_number(PhasePoint center, double radius, const VectorField& field, int samples)
{
    if (!std::isfinite(radius) || radius <= 0.0) {
        throw DomainError("winding_number: radius must be > 0");
    }
    if (samples < 64) {
        throw DomainError("winding_number: at least 64 samples required");
    }
    for (int n = samples; n <= kMaxWindingSamples; n *= 2) {
        const auto point = [&](int m) {
            const double phi = kTwoPi * (m % n) / n;
            return PhasePoint{center.x + radius * std::cos(phi), center.k + radius * std::sin(phi)};
        };
        if (const auto w = accumulate_winding(n, point, field)) {
            return *w;
        }
    }
    throw WindingResolutionError("winding loop under-sampled even at " + std::to_string(kMaxWindingSamples)
                                 + " samples");
}

int boundary_winding(const Interval& x_range, const Interval& k_range, const VectorField& field, int samples_per_side)
{
    if (samples_per_side < 16) {
        throw DomainError("boundary_winding: at least 16 samples per side required");
    }
    for (int n = samples_per_side; n <= kMaxBoundarySamples; n *= 2) {
        const auto point = [&](int m) {
            const int side = (m / n) % 4;
            const double s = static_cast<double>(m % n) / n;
            switch (side) {
            case 0:
                return PhasePoint{x_range.lo + s * x_range.width(), k_range.lo};
            case 1:
                return PhasePoint{x_range.hi, k_range.lo + s * k_range.width()};
            case 2:
                return PhasePoint{x_range.hi - s * x_range.width(), k_range.hi};
            default:
                return PhasePoint{x_range.lo, k_range.hi - s * k_range.width()};
            }
        };
        if (const auto w = accumulate_winding(4 * n, point, field)) {
            return *w;
        }
    }
    throw WindingResolutionError("boundary loop under-sampled even at " + std::to_string(kMaxBoundarySamples)
                                 + " samples per side");
}

CriticalPoint classify(const RefinedZero& candidate, const VectorField& field, double loop_radius)
{
    CriticalPoint cp;
    cp.location = candidate.location;
    cp.speed = candidate.speed;
    cp.converged = candidate.converged;
    cp.kind = CriticalKind::degenerate;
    if (!candidate.converged) {
        return cp;
    }

    const auto J = jacobian(candidate.location, field);
    const double trace = J[0][0] + J[1][1];
    const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    const double disc = trace * trace - 4.0 * det;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        cp.jacobian_eigs = {special::Complex(0.5 * (trace + root), 0.0), special::Complex(0.5 * (trace - root), 0.0)};
    } else {
        const double im = 0.5 * std::sqrt(-disc);
        cp.jacobian_eigs = {special::Complex(0.5 * trace, im), special::Complex(0.5 * trace, -im)};
    }

    try {
        cp.winding = winding_number(candidate.location, loop_radius, field);
    } catch (const NumericalError&) {
        cp.winding = 0;
        return cp;
    }

    const double scale = std::max({std::abs(J[0][0]), std::abs(J[0][1]), std::abs(J[1][0]), std::abs(J[1][1])});
    if (!std::isfinite(det) || scale <= kFlatJacobian || std::abs(det) <= 1e-10 * scale * scale) {
        return cp;
    }

    CriticalKind kind = CriticalKind::degenerate;
    int expected = 1;
    if (det < 0.0) {
        kind = CriticalKind::saddle;
        expected = -1;
    } else if (disc < 0.0) {
        const double re = std::abs(cp.jacobian_eigs[0].real());
        const double im = std::abs(cp.jacobian_eigs[0].imag());
        if (re < 1e-6 * im) {
            kind = CriticalKind::quasi_stable_focus;
        } else {
            kind = J[1][0] > 0.0 ? CriticalKind::vortex_ccw : CriticalKind::vortex_cw;
        }
    } else {
        kind = CriticalKind::node;
    }
    cp.kind = cp.winding == expected ? kind : CriticalKind::degenerate;
    return cp;
}

Census census(const ScanConfig& cfg, const VectorField& field)
{
    const SpeedGrid grid = evaluate_grid(cfg, field);
    const GridSpec spec = cfg.grid();
    Census out;
    out.regions = scan_envelope(grid);

    std::vector<PhasePoint> seeds;
    for (const EnvelopeRegion& region : out.regions) {
        seeds.push_back({spec.x_at(region.slowest_node.i), spec.k_at(region.slowest_node.j)});
    }
    for (int j = 0; j + 1 < cfg.resolution; ++j) {
        for (int i = 0; i + 1 < cfg.resolution; ++i) {
            if (cell_index(grid, i, j) != 0) {
                seeds.push_back({0.5 * (spec.x_at(i) + spec.x_at(i + 1)), 0.5 * (spec.k_at(j) + spec.k_at(j + 1))});
            }
        }
    }

    std::vector<RefinedZero> refined(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t s) { refined[s] = refine_zero(seeds[s], field); });

    std::vector<RefinedZero> unique;
    for (const RefinedZero& r : refined) {
        if (!r.converged || !cfg.x_range.contains(r.location.x) || !cfg.k_range.contains(r.location.k)) {
            continue;
        }
        const auto same = std::find_if(unique.begin(), unique.end(), [&](const RefinedZero& u) {
            return std::hypot(u.location.x - r.location.x, u.location.k - r.location.k) < 1e-7;
        });
        if (same == unique.end()) {
            unique.push_back(r);
        } else if (r.speed < same->speed) {
            *same = r;
        }
    }
    std::sort(unique.begin(), unique.end(), [](const RefinedZero& l, const RefinedZero& r) {
        return l.location.x != r.location.x ? l.location.x < r.location.x : l.location.k < r.location.k;
    });

    out.zeros.resize(unique.size());
    parallel_for(unique.size(), [&](std::size_t z) {
        double radius = 1e-3;
        for (std::size_t o = 0; o < unique.size(); ++o) {
            if (o != z) {
                const double d = std::hypot(unique[o].location.x - unique[z].location.x,
                                            unique[o].location.k - unique[z].location.k);
                radius = std::min(radius, 0.4 * d);
            }
        }
        out.zeros[z] = classify(unique[z], field, radius);
    });
    out.boundary_winding = boundary_winding(cfg.x_range, cfg.k_range, field);
    return out;
}

std::vector<AlphaSummary> alpha_sweep(const std::vector<double>& alphas, const ScanConfig& cfg,
                                      const LVParams& params)
{
    cfg.validate();
    std::vector<AlphaSummary> out;
    out.reserve(alphas.size());
    for (const double alpha : alphas) {
        AlphaSummary summary;
        summary.alpha = alpha;
        try {
            const Census c = census(cfg, quantum_field(GaussianEnsemble(alpha), params));
            summary.n_components = static_cast<int>(c.regions.size());
            summary.zeros = c.zeros;
            summary.boundary_winding = c.boundary_winding;
            for (const CriticalPoint& z : c.zeros) {
                const double d = std::hypot(z.location.x, z.location.k);
                if (!summary.dominant_displacement || d < *summary.dominant_displacement) {
                    summary.dominant_displacement = d;
                }
            }
        } catch (const Error& e) {
            summary = AlphaSummary{};
            summary.alpha = alpha;
            summary.error = e.what();
        }
        out.push_back(std::move(summary));
    }
    return out;
}

} // namespace lvflow::critical
