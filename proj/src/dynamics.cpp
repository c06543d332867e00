#include "lvflow/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace lvflow {

std::string_view to_string(FieldMode mode)
{
    return mode == FieldMode::classical ? "classical" : "quantum";
}

std::string_view to_string(Species s)
{
    return s == Species::prey ? "prey" : "predator";
}

void IntegratorConfig::validate() const
{
    const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(rel_tol) || !positive(abs_tol)) {
        throw DomainError("integrator tolerances must be finite and > 0");
    }
    if (!positive(max_step)) {
        throw DomainError("integrator max_step must be finite and > 0");
    }
    if (!positive(t_end)) {
        throw DomainError("integration span t_end must be finite and > 0");
    }
    if (!positive(sample_interval) || sample_interval > t_end) {
        throw DomainError("sample_interval must satisfy 0 < sample_interval <= t_end");
    }
}

std::vector<double> ExtinctionReport::revival_durations_of(Species s) const
{
    std::vector<double> out;
    for (const Revival& r : revivals) {
        if (r.species == s) {
            out.push_back(r.duration());
        }
    }
    return out;
}

std::size_t ExtinctionReport::window_count(Species s) const
{
    return static_cast<std::size_t>(
        std::count_if(windows.begin(), windows.end(), [s](const ExtinctionWindow& w) { return w.species == s; }));
}

} // namespace lvflow

namespace lvflow::dynamics {

namespace {

using State = std::array<double, 2>;

State to_state(PhasePoint p)
{
    return {p.x, p.k};
}

PhasePoint to_point(const State& s)
{
    return {s[0], s[1]};
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension (Hairer, Norsett & Wanner).
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

class FieldEvaluator {
public:
    explicit FieldEvaluator(const VectorField& field)
        : field_(field)
    {
    }

    State operator()(double t, const State& s) const
    {
        const Velocity v = field_(to_point(s));
        if (!std::isfinite(v.vx) || !std::isfinite(v.vk)) {
            throw FieldEvaluationError("velocity field is non-finite at tau = " + std::to_string(t) + ", (x, k) = ("
                                       + std::to_string(s[0]) + ", " + std::to_string(s[1]) + ")");
        }
        return {v.vx, v.vk};
    }

private:
    const VectorField& field_;
};

std::vector<double> sample_times(const IntegratorConfig& cfg)
{
    std::vector<double> times;
    const auto count = static_cast<std::size_t>(std::floor(cfg.t_end / cfg.sample_interval * (1.0 + 1e-12)));
    times.reserve(count + 2);
    for (std::size_t i = 0; i <= count; ++i) {
        times.push_back(static_cast<double>(i) * cfg.sample_interval);
    }
    if (cfg.t_end - times.back() > 1e-9 * cfg.sample_interval) {
        times.push_back(cfg.t_end);
    } else {
        times.back() = std::min(times.back(), cfg.t_end);
    }
    return times;
}

void append_sample(Trajectory& traj, double t, const State& s, const LVParams& params)
{
    const PhasePoint p = to_point(s);
    traj.times.push_back(t);
    traj.points.push_back(p);
    traj.species.push_back(lv::to_species(p));
    traj.energy.push_back(lv::energy(p, params));
}

} // namespace

Trajectory integrate_field(PhasePoint start, const VectorField& field, FieldMode mode, const LVParams& params,
                           const IntegratorConfig& cfg)
{
    cfg.validate();
    if (!std::isfinite(start.x) || !std::isfinite(start.k)) {
        throw DomainError("start point must be finite");
    }
    const FieldEvaluator f(field);
    const std::vector<double> targets = sample_times(cfg);

    Trajectory traj;
    traj.mode = mode;
    traj.times.reserve(targets.size());
    traj.points.reserve(targets.size());
    traj.species.reserve(targets.size());
    traj.energy.reserve(targets.size());

    State y = to_state(start);
    double t = 0.0;
    append_sample(traj, t, y, params);
    std::size_t next = 1;

    State k1 = f(t, y);
    double h = std::min({cfg.max_step, cfg.sample_interval, 1e-2});
    const double h_floor = 1e-13;

    while (next < targets.size()) {
        const double t_final = cfg.t_end;
        h = std::min(h, t_final - t);
        if (h < h_floor * std::max(1.0, std::abs(t))) {
            throw IntegrationError("step size underflow at tau = " + std::to_string(t), t, to_point(y));
        }

        State tmp;
        const auto stage = [&](std::initializer_list<std::pair<double, const State*>> terms) {
            for (int i = 0; i < 2; ++i) {
                double acc = y[i];
                for (const auto& [coef, k] : terms) {
                    acc += h * coef * (*k)[i];
                }
                tmp[i] = acc;
            }
            return tmp;
        };

        const State k2 = f(t + c2 * h, stage({{a21, &k1}}));
        const State k3 = f(t + c3 * h, stage({{a31, &k1}, {a32, &k2}}));
        const State k4 = f(t + c4 * h, stage({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = f(t + c5 * h, stage({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 = f(t + h, stage({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State y_new = stage({{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
        const State k7 = f(t + h, y_new);

        double err_sq = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err_sq += (e / scale) * (e / scale);
        }
        const double err = std::sqrt(err_sq / 2.0);

        if (!std::isfinite(err)) {
            h *= 0.2;
            continue;
        }
        if (err <= 1.0) {
            const double t_new = (t_final - (t + h) < 1e-12 * std::max(1.0, t_final)) ? t_final : t + h;
            // dense output for every sample inside (t, t_new]
            while (next < targets.size() && targets[next] <= t_new) {
                const double theta = (targets[next] - t) / h;
                const double theta1 = 1.0 - theta;
                State s;
                for (int i = 0; i < 2; ++i) {
                    const double diff = y_new[i] - y[i];
                    const double bspl = h * k1[i] - diff;
                    const double r4 = diff - h * k7[i] - bspl;
                    const double r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
                    s[i] = y[i] + theta * (diff + theta1 * (bspl + theta * (r4 + theta1 * r5)));
                }
                if (targets[next] == t_new) {
                    s = y_new;
                }
                append_sample(traj, targets[next], s, params);
                ++next;
            }
            y = y_new;
            k1 = k7;
            t = t_new;
        }
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h = std::min(cfg.max_step, h * (err <= 1.0 ? factor : std::min(1.0, factor)));
    }
    return traj;
}

Trajectory integrate(PhasePoint start, FieldMode mode, const std::optional<GaussianEnsemble>& ens,
                     const LVParams& params, const IntegratorConfig& cfg)
{
    if (mode == FieldMode::classical) {
        return integrate_field(start, classical_field(params), mode, params, cfg);
    }
    if (!ens) {
        throw DomainError("quantum integration requires a gaussian ensemble");
    }
    return integrate_field(start, quantum_field(*ens, params), mode, params, cfg);
}

ExtinctionReport detect_extinctions(const Trajectory& traj, double threshold)
{
    if (traj.empty()) {
        throw DomainError("detect_extinctions: empty trajectory");
    }
    if (!std::isfinite(threshold) || threshold <= 0.0) {
        throw DomainError("extinction threshold must be finite and > 0");
    }
    ExtinctionReport report;
    report.threshold = threshold;

    for (const Species s : {Species::prey, Species::predator}) {
        const auto density = [&](std::size_t i) { return s == Species::prey ? traj.species[i].y : traj.species[i].z; };
        const auto crossing = [&](std::size_t i) {
            const double v0 = density(i - 1);
            const double v1 = density(i);
            const double frac = (threshold - v0) / (v1 - v0);
            return traj.times[i - 1] + frac * (traj.times[i] - traj.times[i - 1]);
        };

        std::vector<ExtinctionWindow> windows;
        bool below = density(0) < threshold;
        ExtinctionWindow current{traj.times.front(), 0.0, s, true, false};
        for (std::size_t i = 1; i < traj.size(); ++i) {
            const bool now_below = density(i) < threshold;
            if (now_below == below) {
                continue;
            }
            if (now_below) {
                current = {crossing(i), 0.0, s, false, false};
            } else {
                current.t_end = crossing(i);
                windows.push_back(current);
            }
            below = now_below;
        }
        if (below) {
            current.t_end = traj.times.back();
            current.open_end = true;
            windows.push_back(current);
        }
        for (std::size_t i = 1; i < windows.size(); ++i) {
            report.revivals.push_back({windows[i - 1].t_end, windows[i].t_start, s});
        }
        report.windows.insert(report.windows.end(), windows.begin(), windows.end());
    }

    std::stable_sort(report.windows.begin(), report.windows.end(),
                     [](const ExtinctionWindow& l, const ExtinctionWindow& r) { return l.t_start < r.t_start; });
    std::stable_sort(report.revivals.begin(), report.revivals.end(),
                     [](const Revival& l, const Revival& r) { return l.t_start < r.t_start; });
    for (const Revival& r : report.revivals) {
        report.revival_durations.push_back(r.duration());
    }
    return report;
}

std::vector<Peak> prey_peaks(const Trajectory& traj)
{
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
        const double y0 = traj.species[i - 1].y;
        const double y1 = traj.species[i].y;
        const double y2 = traj.species[i + 1].y;
        if (!(y1 > y0 && y1 >= y2)) {
            continue;
        }
        // vertex of the parabola through the three bracketing samples
        const double t0 = traj.times[i - 1];
        const double t1 = traj.times[i];
        const double t2 = traj.times[i + 1];
        const double s01 = (y1 - y0) / (t1 - t0);
        const double s12 = (y2 - y1) / (t2 - t1);
        const double curvature = (s12 - s01) / (t2 - t0);
        if (curvature >= 0.0) {
            peaks.push_back({t1, y1});
            continue;
        }
        const double vertex = 0.5 * (t0 + t1) - s01 / (2.0 * curvature);
        const double value = y1 + s01 * (vertex - t1) + curvature * (vertex - t0) * (vertex - t1);
        peaks.push_back({std::clamp(vertex, t0, t2), value});
    }
    return peaks;
}

std::vector<double> dephasing(const Trajectory& classical, const Trajectory& quantum)
{
    const std::vector<Peak> pc = prey_peaks(classical);
    const std::vector<Peak> pq = prey_peaks(quantum);
    if (pc.size() < 2 || pq.size() < 2) {
        throw InsufficientDataError("dephasing needs at least 2 prey maxima in each trajectory (got "
                                    + std::to_string(pc.size()) + " and " + std::to_string(pq.size()) + ")");
    }
    const std::size_t n = std::min(pc.size(), pq.size());
    std::vector<double> lags(n);
    for (std::size_t i = 0; i < n; ++i) {
        lags[i] = pq[i].time - pc[i].time;
    }
    return lags;
}

double max_relative_energy_drift(const Trajectory& traj)
{
    if (traj.empty()) {
        return 0.0;
    }
    const double e0 = traj.energy.front();
    double worst = 0.0;
    for (const double e : traj.energy) {
        worst = std::max(worst, std::abs(e - e0) / std::abs(e0));
    }
    return worst;
}

double closest_approach(const Trajectory& traj, PhasePoint target, double t_from, const VectorField& field)
{
    const auto dist2 = [&](PhasePoint p) {
        const double dx = p.x - target.x;
        const double dk = p.k - target.k;
        return dx * dx + dk * dk;
    };
    std::size_t best = traj.size();
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (traj.times[i] >= t_from && (best == traj.size() || dist2(traj.points[i]) < dist2(traj.points[best]))) {
            best = i;
        }
    }
    if (best == traj.size()) {
        throw DomainError("closest_approach: no samples after t_from");
    }

    double result = dist2(traj.points[best]);
    // refine on the two neighbouring intervals
    for (std::size_t seg = (best > 0 ? best - 1 : 0); seg <= best && seg + 1 < traj.size(); ++seg) {
        if (traj.times[seg] < t_from) {
            continue;
        }
        const PhasePoint p0 = traj.points[seg];
        const PhasePoint p1 = traj.points[seg + 1];
        const double dt = traj.times[seg + 1] - traj.times[seg];
        const Velocity v0 = field(p0);
        const Velocity v1 = field(p1);
        const auto hermite = [&](double s) {
            const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
            const double h10 = s * (1 - s) * (1 - s);
            const double h01 = s * s * (3 - 2 * s);
            const double h11 = s * s * (s - 1);
            return PhasePoint{h00 * p0.x + h10 * dt * v0.vx + h01 * p1.x + h11 * dt * v1.vx,
                              h00 * p0.k + h10 * dt * v0.vk + h01 * p1.k + h11 * dt * v1.vk};
        };
        // golden-section search on [0, 1]
        constexpr double ratio = 0.6180339887498949;
        double lo = 0.0;
        double hi = 1.0;
        double m1 = hi - ratio * (hi - lo);
        double m2 = lo + ratio * (hi - lo);
        double f1 = dist2(hermite(m1));
        double f2 = dist2(hermite(m2));
        for (int it = 0; it < 80; ++it) {
            if (f1 < f2) {
                hi = m2;
                m2 = m1;
                f2 = f1;
                m1 = hi - ratio * (hi - lo);
                f1 = dist2(hermite(m1));
            } else {
                lo = m1;
                m1 = m2;
                f1 = f2;
                m2 = lo + ratio * (hi - lo);
                f2 = dist2(hermite(m2));
            }
        }
        result = std::min({result, f1, f2});
    }
    return std::sqrt(result);
}

double max_excursion(const Trajectory& traj)
{
    double worst = 0.0;
    for (const PhasePoint& p : traj.points) {
        worst = std::max({worst, std::abs(p.x), std::abs(p.k)});
    }
    return worst;
}

} // namespace lvflow::dynamics
