#pragma once

#include "lvflow/dynamics.hpp"
#include "lvflow/wigner_flow.hpp"

#include <string>
#include <vector>

namespace lvflow::app {

// Prey and predator densities against tau, one colour pair per trajectory,
// with the extinction threshold drawn as a horizontal rule.
std::string trajectory_svg(const std::vector<Trajectory>& trajectories, double threshold);

// Map of |w| over the grid; nodes under `speed_threshold` are highlighted.
std::string envelope_svg(const std::vector<FlowSample>& samples, const GridSpec& grid, double speed_threshold);

} // namespace lvflow::app
