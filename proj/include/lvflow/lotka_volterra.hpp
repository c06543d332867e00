#pragma once

namespace lvflow {

/// Canonical coordinates (x, k); the species densities are y = e^-x, z = e^-k.
struct PhasePoint {
    double x = 0.0;
    double k = 0.0;

    friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// Prey (y) and predator (z) densities, both strictly positive.
struct SpeciesPoint {
    double y = 1.0;
    double z = 1.0;

    friend bool operator==(const SpeciesPoint&, const SpeciesPoint&) = default;
};

/// Phase-space velocity (dx/dtau, dk/dtau).
struct Velocity {
    double vx = 0.0;
    double vk = 0.0;

    friend bool operator==(const Velocity&, const Velocity&) = default;
};

double norm(Velocity v);

/// Prey-predator coupling a > 0 of H(x, k) = a x + k + a e^-x + e^-k.
class LVParams {
public:
    /// Throws DomainError unless a is finite and positive.
    explicit LVParams(double a);

    double a() const { return a_; }

private:
    double a_;
};

} // namespace lvflow

namespace lvflow::lv {

/// H(x, k); its minimum a + 1 sits at the origin.
double energy(PhasePoint p, const LVParams& params);

/// (dH/dk, -dH/dx) = (1 - e^-k, a e^-x - a).
Velocity classical_velocity(PhasePoint p, const LVParams& params);

/// d^(2 eta + 1) H / dx^(2 eta + 1) = a (delta_{eta 0} - e^-x).
double odd_derivative_x(PhasePoint p, const LVParams& params, int eta);

/// d^(2 eta + 1) H / dk^(2 eta + 1) = delta_{eta 0} - e^-k.
double odd_derivative_k(PhasePoint p, int eta);

SpeciesPoint to_species(PhasePoint p);

/// Inverse of to_species; throws DomainError for non-positive densities.
PhasePoint from_species(SpeciesPoint s);

} // namespace lvflow::lv
