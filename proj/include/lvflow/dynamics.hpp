#pragma once

#include "lvflow/error.hpp"
#include "lvflow/lotka_volterra.hpp"
#include "lvflow/vector_field.hpp"
#include "lvflow/wigner_flow.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace lvflow {

enum class FieldMode { classical, quantum };

std::string_view to_string(FieldMode mode);

struct IntegratorConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.1;
    double t_end = 100.0;
    double sample_interval = 0.1;

    /// Throws DomainError unless all tolerances are positive and
    /// 0 < sample_interval <= t_end.
    void validate() const;
};

/// Time-stamped states of one integration, sampled on a fixed cadence.
struct Trajectory {
    FieldMode mode = FieldMode::classical;
    std::vector<double> times;
    std::vector<PhasePoint> points;
    std::vector<SpeciesPoint> species;
    std::vector<double> energy;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
};

/// Adaptive step size fell below the representable limit.
class IntegrationError : public NumericalError {
public:
    IntegrationError(const std::string& what, double last_time, PhasePoint last_state)
        : NumericalError(what)
        , last_time_(last_time)
        , last_state_(last_state)
    {
    }

    double last_time() const { return last_time_; }
    PhasePoint last_state() const { return last_state_; }

private:
    double last_time_;
    PhasePoint last_state_;
};

/// The velocity field returned a non-finite component.
class FieldEvaluationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Not enough oscillation peaks to compare two trajectories.
class InsufficientDataError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

enum class Species { prey, predator };

std::string_view to_string(Species s);

/// Interval during which one species stays below the extinction threshold.
struct ExtinctionWindow {
    double t_start = 0.0;
    double t_end = 0.0;
    Species species = Species::prey;
    bool open_start = false; ///< trajectory already began below threshold
    bool open_end = false;   ///< trajectory ended below threshold
};

/// Above-threshold stretch between two consecutive windows of the same species.
struct Revival {
    double t_start = 0.0;
    double t_end = 0.0;
    Species species = Species::prey;

    double duration() const { return t_end - t_start; }
};

struct ExtinctionReport {
    double threshold = 0.04;
    std::vector<ExtinctionWindow> windows; ///< ordered by t_start
    std::vector<Revival> revivals;         ///< ordered by t_start
    std::vector<double> revival_durations; ///< durations of `revivals`, same order

    std::vector<double> revival_durations_of(Species s) const;
    std::size_t window_count(Species s) const;
};

/// Sub-sample location of a local maximum.
struct Peak {
    double time = 0.0;
    double value = 0.0;
};

} // namespace lvflow

namespace lvflow::dynamics {

/// Dormand-Prince 5(4) integration of an arbitrary field, with dense output
/// at multiples of cfg.sample_interval and a final sample at cfg.t_end.
/// `mode` only tags the result.
Trajectory integrate_field(PhasePoint start, const VectorField& field, FieldMode mode, const LVParams& params,
                           const IntegratorConfig& cfg);

/// Classical (Hamiltonian) or quantum (Gaussian-ensemble) trajectory.
/// Quantum mode requires `ens`; classical mode ignores it.
Trajectory integrate(PhasePoint start, FieldMode mode, const std::optional<GaussianEnsemble>& ens,
                     const LVParams& params, const IntegratorConfig& cfg);

/// Extinction windows for prey and predator; crossings are linearly interpolated.
ExtinctionReport detect_extinctions(const Trajectory& traj, double threshold);

/// Local maxima of the prey density with quadratic sub-sample refinement.
std::vector<Peak> prey_peaks(const Trajectory& traj);

/// Per-cycle lag t_quantum - t_classical between matched prey maxima.
/// Throws InsufficientDataError if either input has fewer than 2 peaks.
std::vector<double> dephasing(const Trajectory& classical, const Trajectory& quantum);

/// max |E(t) - E(0)| / |E(0)| over the samples.
double max_relative_energy_drift(const Trajectory& traj);

/// Smallest distance between `target` and the trajectory for t >= t_from,
/// using cubic Hermite interpolation between samples with slopes from `field`.
double closest_approach(const Trajectory& traj, PhasePoint target, double t_from, const VectorField& field);

/// max(|x|, |k|) over the samples.
double max_excursion(const Trajectory& traj);

} // namespace lvflow::dynamics
