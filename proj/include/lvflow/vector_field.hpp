#pragma once

#include "lvflow/lotka_volterra.hpp"
#include "lvflow/wigner_flow.hpp"

#include <functional>

namespace lvflow {

/// Any planar velocity field; used by the integrator and the zero finder.
using VectorField = std::function<Velocity(PhasePoint)>;

inline VectorField classical_field(LVParams params)
{
    return [params](PhasePoint p) { return lv::classical_velocity(p, params); };
}

inline VectorField quantum_field(GaussianEnsemble ens, LVParams params)
{
    return [ens, params](PhasePoint p) { return wigner::quantum_velocity(p, ens, params); };
}

} // namespace lvflow
