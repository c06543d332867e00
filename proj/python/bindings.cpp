#include "lvflow/critical_points.hpp"
#include "lvflow/dynamics.hpp"
#include "lvflow/lotka_volterra.hpp"
#include "lvflow/special_functions.hpp"
#include "lvflow/verify.hpp"
#include "lvflow/wigner_flow.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>

namespace py = pybind11;
using namespace lvflow;

namespace {

using Range = std::pair<double, double>;

FieldMode parse_mode(const std::string& mode)
{
    if (mode == "classical") {
        return FieldMode::classical;
    }
    if (mode == "quantum") {
        return FieldMode::quantum;
    }
    throw DomainError("mode must be 'classical' or 'quantum'");
}

py::dict py_flow_grid(double alpha, double a, Range x_range, Range k_range, int resolution)
{
    const GridSpec grid{{x_range.first, x_range.second}, {k_range.first, k_range.second}, resolution};
    std::vector<FlowSample> samples;
    {
        py::gil_scoped_release release;
        samples = wigner::flow_grid(grid, GaussianEnsemble(alpha), LVParams(a));
    }
    const py::ssize_t n = resolution;
    const auto column = [&](auto get) {
        py::array_t<double> arr({n, n});
        auto m = arr.mutable_unchecked<2>();
        for (py::ssize_t j = 0; j < n; ++j) {
            for (py::ssize_t i = 0; i < n; ++i) {
                m(j, i) = get(samples[static_cast<std::size_t>(j * n + i)]);
            }
        }
        return arr;
    };
    py::dict out;
    out["x"] = column([](const FlowSample& s) { return s.point.x; });
    out["k"] = column([](const FlowSample& s) { return s.point.k; });
    out["G"] = column([](const FlowSample& s) { return s.density; });
    out["wx"] = column([](const FlowSample& s) { return s.w.vx; });
    out["wk"] = column([](const FlowSample& s) { return s.w.vk; });
    out["divJx"] = column([](const FlowSample& s) { return s.div_jx; });
    out["divJk"] = column([](const FlowSample& s) { return s.div_jk; });
    out["divJ"] = column([](const FlowSample& s) { return s.div_j; });
    out["divw"] = column([](const FlowSample& s) { return s.div_w_defined ? s.div_w : std::nan(""); });
    return out;
}

py::dict py_integrate(double x0, double k0, double a, const std::string& mode, std::optional<double> alpha, double t_end,
                   double sample_interval, double rel_tol, double abs_tol, double max_step)
{
    IntegratorConfig cfg;
    cfg.t_end = t_end;
    cfg.sample_interval = sample_interval;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    cfg.max_step = max_step;
    const FieldMode m = parse_mode(mode);
    std::optional<GaussianEnsemble> ens;
    if (alpha) {
        ens.emplace(*alpha);
    }
    Trajectory t;
    {
        py::gil_scoped_release release;
        t = dynamics::integrate({x0, k0}, m, ens, LVParams(a), cfg);
    }
    const auto n = static_cast<py::ssize_t>(t.size());
    py::array_t<double> tau(n), x(n), k(n), y(n), z(n), e(n);
    for (py::ssize_t i = 0; i < n; ++i) {
        const auto s = static_cast<std::size_t>(i);
        tau.mutable_at(i) = t.times[s];
        x.mutable_at(i) = t.points[s].x;
        k.mutable_at(i) = t.points[s].k;
        y.mutable_at(i) = t.species[s].y;
        z.mutable_at(i) = t.species[s].z;
        e.mutable_at(i) = t.energy[s];
    }
    py::dict out;
    out["mode"] = std::string(to_string(t.mode));
    out["tau"] = tau;
    out["x"] = x;
    out["k"] = k;
    out["y"] = y;
    out["z"] = z;
    out["energy"] = e;
    return out;
}

Trajectory trajectory_from(py::array_t<double> tau, py::array_t<double> x, py::array_t<double> k)
{
    if (tau.size() != x.size() || tau.size() != k.size()) {
        throw DomainError("tau, x and k must have the same length");
    }
    Trajectory t;
    t.mode = FieldMode::quantum;
    for (py::ssize_t i = 0; i < tau.size(); ++i) {
        const PhasePoint p{x.at(i), k.at(i)};
        t.times.push_back(tau.at(i));
        t.points.push_back(p);
        t.species.push_back(lv::to_species(p));
        t.energy.push_back(0.0);
    }
    return t;
}

py::dict py_extinctions(py::array_t<double> tau, py::array_t<double> x, py::array_t<double> k, double threshold)
{
    const ExtinctionReport r = dynamics::detect_extinctions(trajectory_from(tau, x, k), threshold);
    py::list windows;
    for (const ExtinctionWindow& w : r.windows) {
        py::dict d;
        d["t_start"] = w.t_start;
        d["t_end"] = w.t_end;
        d["species"] = std::string(to_string(w.species));
        d["open_start"] = w.open_start;
        d["open_end"] = w.open_end;
        windows.append(d);
    }
    py::list revivals;
    for (const Revival& v : r.revivals) {
        py::dict d;
        d["t_start"] = v.t_start;
        d["t_end"] = v.t_end;
        d["species"] = std::string(to_string(v.species));
        revivals.append(d);
    }
    py::dict out;
    out["threshold"] = r.threshold;
    out["windows"] = windows;
    out["revivals"] = revivals;
    out["revival_durations"] = r.revival_durations;
    return out;
}

py::dict zero_to_dict(const CriticalPoint& z)
{
    py::dict d;
    d["x"] = z.location.x;
    d["k"] = z.location.k;
    d["kind"] = std::string(to_string(z.kind));
    d["winding"] = z.winding;
    d["speed"] = z.speed;
    d["eigenvalues"] = py::make_tuple(z.jacobian_eigs[0], z.jacobian_eigs[1]);
    return d;
}

py::list py_alpha_sweep(const std::vector<double>& alphas, double a, Range x_range, Range k_range, int resolution,
                     double speed_threshold)
{
    ScanConfig cfg;
    cfg.x_range = {x_range.first, x_range.second};
    cfg.k_range = {k_range.first, k_range.second};
    cfg.resolution = resolution;
    cfg.speed_threshold = speed_threshold;
    std::vector<AlphaSummary> sweep;
    {
        py::gil_scoped_release release;
        sweep = critical::alpha_sweep(alphas, cfg, LVParams(a));
    }
    py::list out;
    for (const AlphaSummary& s : sweep) {
        py::dict d;
        d["alpha"] = s.alpha;
        if (s.error) {
            d["error"] = *s.error;
        } else {
            d["n_components"] = s.n_components;
            py::list zeros;
            for (const CriticalPoint& z : s.zeros) {
                zeros.append(zero_to_dict(z));
            }
            d["zeros"] = zeros;
            d["boundary_winding"] = s.boundary_winding;
            d["displacement_of_dominant_zero"] = s.dominant_displacement;
        }
        out.append(d);
    }
    return out;
}

py::dict py_verify(double perturbation, int eta_max, int grid_points)
{
    verify::VerifyOptions opts;
    opts.div_jx_perturbation = perturbation;
    opts.eta_max = eta_max;
    opts.grid_points = grid_points;
    verify::VerifyReport r;
    {
        py::gil_scoped_release release;
        r = verify::run(opts);
    }
    py::list checks;
    for (const verify::CheckResult& c : r.checks) {
        py::dict d;
        d["name"] = c.name;
        d["description"] = c.description;
        d["max_error"] = c.max_error;
        d["tolerance"] = c.tolerance;
        d["evaluations"] = c.evaluations;
        d["passed"] = c.passed;
        checks.append(d);
    }
    py::dict out;
    out["all_passed"] = r.all_passed;
    out["checks"] = checks;
    out["validity_note"] = r.validity_note;
    return out;
}

} // namespace

PYBIND11_MODULE(_lvflow, m)
{
    m.doc() = "Quantum Lotka-Volterra phase-space flow";

    auto error = py::register_exception<Error>(m, "LvflowError");
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<IoError>(m, "IoError", error.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", error.ptr());

    m.def("hermite", &special::hermite, py::arg("n"), py::arg("u"));
    m.def("erf", &special::erf_complex, py::arg("z"));
    m.def("erfi", &special::erfi, py::arg("u"));
    m.def(
        "energy", [](double x, double k, double a) { return lv::energy({x, k}, LVParams(a)); }, py::arg("x"),
        py::arg("k"), py::arg("a"));
    m.def(
        "classical_velocity",
        [](double x, double k, double a) {
            const Velocity v = lv::classical_velocity({x, k}, LVParams(a));
            return py::make_tuple(v.vx, v.vk);
        },
        py::arg("x"), py::arg("k"), py::arg("a"));
    m.def(
        "quantum_velocity",
        [](double x, double k, double alpha, double a) {
            const Velocity v = wigner::quantum_velocity({x, k}, GaussianEnsemble(alpha), LVParams(a));
            return py::make_tuple(v.vx, v.vk);
        },
        py::arg("x"), py::arg("k"), py::arg("alpha"), py::arg("a"));
    m.def(
        "series_currents",
        [](double x, double k, double alpha, double a, int eta_max) {
            const SeriesCurrents j = wigner::series_currents({x, k}, GaussianEnsemble(alpha), LVParams(a),
                                                             SeriesTruncation(eta_max));
            return py::make_tuple(j.jx, j.jk);
        },
        py::arg("x"), py::arg("k"), py::arg("alpha"), py::arg("a"), py::arg("eta_max") = 25);
    m.def(
        "density", [](double x, double k, double alpha) { return wigner::gaussian_density({x, k}, GaussianEnsemble(alpha)); },
        py::arg("x"), py::arg("k"), py::arg("alpha"));
    m.def("flow_grid", &py_flow_grid, py::arg("alpha"), py::arg("a"), py::arg("x_range") = Range{-3, 3},
          py::arg("k_range") = Range{-3, 3}, py::arg("resolution") = 256);
    m.def("integrate", &py_integrate, py::arg("x0"), py::arg("k0"), py::arg("a"), py::arg("mode"),
          py::arg("alpha") = std::nullopt, py::arg("t_end") = 100.0, py::arg("sample_interval") = 0.1,
          py::arg("rel_tol") = 1e-9, py::arg("abs_tol") = 1e-12, py::arg("max_step") = 0.1);
    m.def("detect_extinctions", &py_extinctions, py::arg("tau"), py::arg("x"), py::arg("k"), py::arg("threshold") = 0.04);
    m.def("alpha_sweep", &py_alpha_sweep, py::arg("alphas"), py::arg("a") = 1.0, py::arg("x_range") = Range{-3, 3},
          py::arg("k_range") = Range{-3, 3}, py::arg("resolution") = 256, py::arg("speed_threshold") = 0.07);
    m.def("verify", &py_verify, py::arg("perturbation") = 0.0, py::arg("eta_max") = 25, py::arg("grid_points") = 21);
}
