#include "lvflow/lotka_volterra.hpp"

#include "lvflow/error.hpp"

#include <cmath>
#include <string>

namespace lvflow {

double norm(Velocity v)
{
    return std::hypot(v.vx, v.vk);
}

LVParams::LVParams(double a)
    : a_(a)
{
    if (!std::isfinite(a) || a <= 0.0) {
        throw DomainError("LV coupling a must be finite and > 0, got " + std::to_string(a));
    }
}

} // namespace lvflow

namespace lvflow::lv {

double energy(PhasePoint p, const LVParams& params)
{
    const double a = params.a();
    return a * p.x + p.k + a * std::exp(-p.x) + std::exp(-p.k);
}

Velocity classical_velocity(PhasePoint p, const LVParams& params)
{
    const double a = params.a();
    // expm1 keeps the velocity exact to rounding next to the fixed point
    return {-std::expm1(-p.k), a * std::expm1(-p.x)};
}

double odd_derivative_x(PhasePoint p, const LVParams& params, int eta)
{
    if (eta < 0) {
        throw DomainError("odd_derivative_x: eta must be >= 0");
    }
    const double a = params.a();
    return eta == 0 ? -a * std::expm1(-p.x) : -a * std::exp(-p.x);
}

double odd_derivative_k(PhasePoint p, int eta)
{
    if (eta < 0) {
        throw DomainError("odd_derivative_k: eta must be >= 0");
    }
    return eta == 0 ? -std::expm1(-p.k) : -std::exp(-p.k);
}

SpeciesPoint to_species(PhasePoint p)
{
    return {std::exp(-p.x), std::exp(-p.k)};
}

PhasePoint from_species(SpeciesPoint s)
{
    if (!(s.y > 0.0) || !(s.z > 0.0) || !std::isfinite(s.y) || !std::isfinite(s.z)) {
        throw DomainError("species densities must be finite and > 0");
    }
    return {-std::log(s.y), -std::log(s.z)};
}

} // namespace lvflow::lv
