#include "svg.hpp"

#include "io.hpp"

#include <algorithm>
#include <cmath>

namespace lvflow::app {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 40.0;
constexpr std::size_t kMaxPolylinePoints = 4000;

std::string header(double w, double h)
{
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_double(w) + "\" height=\"" + format_double(h)
        + "\" viewBox=\"0 0 " + format_double(w) + " " + format_double(h) + "\">\n"
        + "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string fixed(double v)
{
    return format_double(std::round(v * 100.0) / 100.0);
}

} // namespace

std::string trajectory_svg(const std::vector<Trajectory>& trajectories, double threshold)
{
    double t_max = 0.0;
    double y_max = threshold;
    for (const Trajectory& t : trajectories) {
        if (!t.empty()) {
            t_max = std::max(t_max, t.times.back());
        }
        for (const SpeciesPoint& s : t.species) {
            y_max = std::max({y_max, s.y, s.z});
        }
    }
    if (t_max <= 0.0) {
        t_max = 1.0;
    }
    const auto px = [&](double tau) { return kMargin + (kWidth - 2 * kMargin) * tau / t_max; };
    const auto py = [&](double v) { return kHeight - kMargin - (kHeight - 2 * kMargin) * v / y_max; };

    std::string out = header(kWidth, kHeight);
    out += "<line x1=\"" + fixed(kMargin) + "\" y1=\"" + fixed(py(threshold)) + "\" x2=\"" + fixed(kWidth - kMargin)
        + "\" y2=\"" + fixed(py(threshold)) + "\" stroke=\"goldenrod\" stroke-dasharray=\"4 3\"/>\n";
    for (const Trajectory& t : trajectories) {
        const bool classical = t.mode == FieldMode::classical;
        const std::size_t stride = std::max<std::size_t>(1, t.size() / kMaxPolylinePoints);
        for (const bool prey : {true, false}) {
            out += "<polyline fill=\"none\" stroke=\"";
            out += prey ? "steelblue" : "firebrick";
            out += classical ? "\" stroke-dasharray=\"6 4\"" : "\"";
            out += " points=\"";
            for (std::size_t i = 0; i < t.size(); i += stride) {
                const double v = prey ? t.species[i].y : t.species[i].z;
                out += fixed(px(t.times[i])) + "," + fixed(py(v)) + " ";
            }
            out += "\"/>\n";
        }
    }
    out += "<text x=\"" + fixed(kMargin) + "\" y=\"20\" font-size=\"12\">prey (blue), predator (red); dashed: "
           "classical; rule: threshold "
        + format_double(threshold) + "; tau in [0, " + format_double(t_max) + "]</text>\n";
    out += "</svg>\n";
    return out;
}

std::string envelope_svg(const std::vector<FlowSample>& samples, const GridSpec& grid, double speed_threshold)
{
    const int n = grid.resolution;
    const double side = 600.0;
    const double cell = side / n;
    double max_speed = 0.0;
    for (const FlowSample& s : samples) {
        if (std::isfinite(norm(s.w))) {
            max_speed = std::max(max_speed, norm(s.w));
        }
    }
    std::string out = header(side, side);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const double speed = norm(samples[static_cast<std::size_t>(j) * n + i].w);
            std::string fill;
            if (speed < speed_threshold) {
                fill = "rgb(30,80,200)";
            } else {
                // log-scaled grey ramp
                const double f = max_speed > speed_threshold
                    ? std::log(speed / speed_threshold) / std::log(max_speed / speed_threshold)
                    : 1.0;
                const int g = 255 - static_cast<int>(std::clamp(f, 0.0, 1.0) * 180.0);
                fill = "rgb(" + std::to_string(g) + "," + std::to_string(g) + "," + std::to_string(g) + ")";
            }
            // k grows upwards
            out += "<rect x=\"" + fixed(i * cell) + "\" y=\"" + fixed(side - (j + 1) * cell) + "\" width=\""
                + fixed(cell + 0.01) + "\" height=\"" + fixed(cell + 0.01) + "\" fill=\"" + fill + "\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

} // namespace lvflow::app
