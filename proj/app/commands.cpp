#include "commands.hpp"

#include "io.hpp"
#include "svg.hpp"

#include "lvflow/critical_points.hpp"
#include "lvflow/dynamics.hpp"
#include "lvflow/error.hpp"
#include "lvflow/special_functions.hpp"
#include "lvflow/verify.hpp"
#include "lvflow/wigner_flow.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>

namespace lvflow::app {

namespace {

constexpr int kMaxResolution = 8192;
constexpr double kMaxSamples = 1e8;
// the velocity kernel evaluates erf at imaginary part alpha / 2
constexpr double kMaxAlpha = 2.0 * special::kMaxErfImag;

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw DomainError(message);
    }
}

GaussianEnsemble make_ensemble(double alpha)
{
    require(std::isfinite(alpha) && alpha > 0.0 && alpha <= kMaxAlpha,
            "--alpha must lie in (0, " + format_double(kMaxAlpha) + "], got " + format_double(alpha));
    return GaussianEnsemble(alpha);
}

Interval make_interval(const std::vector<double>& v, const std::string& flag)
{
    require(v.size() == 2, flag + " needs two values lo,hi");
    require(std::isfinite(v[0]) && std::isfinite(v[1]) && v[1] > v[0], flag + " needs finite lo < hi");
    return {v[0], v[1]};
}

void require_resolution(int resolution, int minimum)
{
    require(resolution >= minimum && resolution <= kMaxResolution,
            "--resolution must lie in [" + std::to_string(minimum) + ", " + std::to_string(kMaxResolution) + "]");
}

void require_threshold(double threshold, const std::string& flag)
{
    require(std::isfinite(threshold) && threshold > 0.0, flag + " must be finite and > 0");
}

// Called for every output before any work starts; files are written only
// once everything has been computed.
void probe_output(const std::string& path, bool with_sidecar)
{
    if (path.empty()) {
        return;
    }
    probe_writable(path);
    if (with_sidecar && path != "-") {
        probe_writable(sidecar_path(path));
    }
}

void write_with_sidecar(const std::string& path, const std::string& content, const std::string& command,
                        const nlohmann::json& config)
{
    write_atomic(path, content);
    if (path != "-") {
        write_atomic(sidecar_path(path), run_metadata(command, config).dump(2) + "\n");
    }
}

} // namespace

int cmd_flow_field(const FlowFieldOptions& opt)
{
    const LVParams params(opt.a);
    const GaussianEnsemble ens = make_ensemble(opt.alpha);
    require_resolution(opt.resolution, 2);
    require_threshold(opt.speed_threshold, "--speed-threshold");
    const GridSpec grid{make_interval(opt.x_range, "--x-range"), make_interval(opt.k_range, "--k-range"),
                        opt.resolution};
    grid.validate();
    require(!opt.output.empty(), "--output is required");

    probe_output(opt.output, true);
    probe_output(opt.svg, false);

    const std::vector<FlowSample> samples = wigner::flow_grid(grid, ens, params);
    const nlohmann::json config{{"a", opt.a},
                                {"alpha", opt.alpha},
                                {"x_range", opt.x_range},
                                {"k_range", opt.k_range},
                                {"resolution", opt.resolution}};
    write_with_sidecar(opt.output, flow_grid_csv(samples), "flow-field", config);
    if (!opt.svg.empty()) {
        write_atomic(opt.svg, envelope_svg(samples, grid, opt.speed_threshold));
    }
    return kOk;
}

int cmd_trajectory(const TrajectoryOptions& opt)
{
    const LVParams params(opt.a);
    const bool want_classical = opt.mode == "classical" || opt.mode == "both";
    const bool want_quantum = opt.mode == "quantum" || opt.mode == "both";
    require(want_classical || want_quantum, "--mode must be classical, quantum or both");
    std::optional<GaussianEnsemble> ens;
    if (want_quantum) {
        require(opt.alpha.has_value(), "--alpha is required for quantum trajectories");
        ens = make_ensemble(*opt.alpha);
    }
    require(std::isfinite(opt.x0) && std::isfinite(opt.k0), "--x0 and --k0 must be finite");
    IntegratorConfig cfg;
    cfg.t_end = opt.t_end;
    cfg.sample_interval = opt.sample_interval;
    cfg.rel_tol = opt.rel_tol;
    cfg.abs_tol = opt.abs_tol;
    cfg.max_step = opt.max_step;
    cfg.validate();
    require(cfg.t_end / cfg.sample_interval <= kMaxSamples, "--t-end / --sample-interval exceeds 1e8 samples");
    require_threshold(opt.threshold, "--threshold");
    require(!opt.output.empty(), "--output is required");

    probe_output(opt.output, true);
    probe_output(opt.extinction_report, false);
    probe_output(opt.svg, false);

    const PhasePoint start{opt.x0, opt.k0};
    std::vector<Trajectory> runs;
    if (want_classical) {
        runs.push_back(dynamics::integrate(start, FieldMode::classical, std::nullopt, params, cfg));
    }
    if (want_quantum) {
        runs.push_back(dynamics::integrate(start, FieldMode::quantum, ens, params, cfg));
    }

    nlohmann::json config{{"mode", opt.mode},       {"a", opt.a},
                          {"x0", opt.x0},           {"k0", opt.k0},
                          {"t_end", opt.t_end},     {"sample_interval", opt.sample_interval},
                          {"rel_tol", opt.rel_tol}, {"abs_tol", opt.abs_tol},
                          {"max_step", opt.max_step}, {"threshold", opt.threshold}};
    config["alpha"] = opt.alpha ? nlohmann::json(*opt.alpha) : nlohmann::json(nullptr);
    write_with_sidecar(opt.output, trajectory_csv(runs), "trajectory", config);
    if (!opt.extinction_report.empty()) {
        write_atomic(opt.extinction_report, extinction_document(opt.threshold, runs).dump(2) + "\n");
    }
    if (!opt.svg.empty()) {
        write_atomic(opt.svg, trajectory_svg(runs, opt.threshold));
    }
    return kOk;
}

int cmd_equilibria(const EquilibriaOptions& opt)
{
    const LVParams params(opt.a);
    require(!opt.alphas.empty(), "--alphas needs at least one value");
    for (const double alpha : opt.alphas) {
        make_ensemble(alpha);
    }
    require_resolution(opt.resolution, 16);
    const Interval range = make_interval(opt.range, "--range");
    ScanConfig cfg{range, range, opt.resolution, opt.speed_threshold};
    require_threshold(opt.speed_threshold, "--speed-threshold");
    cfg.validate();
    require(!opt.output.empty(), "--output is required");

    probe_output(opt.output, true);

    const std::vector<AlphaSummary> sweep = critical::alpha_sweep(opt.alphas, cfg, params);
    const nlohmann::json config{{"alphas", opt.alphas},
                                {"a", opt.a},
                                {"range", opt.range},
                                {"resolution", opt.resolution},
                                {"speed_threshold", opt.speed_threshold}};
    write_with_sidecar(opt.output, census_document(sweep, cfg, opt.a).dump(2) + "\n", "equilibria", config);
    for (const AlphaSummary& s : sweep) {
        if (s.error) {
            return kNumerical;
        }
    }
    return kOk;
}

int cmd_extinction(const ExtinctionOptions& opt)
{
    require_threshold(opt.threshold, "--threshold");
    require(!opt.input.empty(), "--input is required");
    require(!opt.output.empty(), "--output is required");
    const std::string text = read_file(opt.input);
    const std::vector<Trajectory> runs = parse_trajectory_csv(text);

    probe_output(opt.output, true);

    const nlohmann::json config{{"input", opt.input}, {"threshold", opt.threshold}};
    write_with_sidecar(opt.output, extinction_document(opt.threshold, runs).dump(2) + "\n", "extinction", config);
    return kOk;
}

int cmd_verify(const VerifyCommandOptions& opt, std::ostream& log)
{
    verify::VerifyOptions options;
    options.div_jx_perturbation = opt.perturb;
    options.eta_max = opt.eta_max;
    require(std::isfinite(opt.perturb), "--perturb must be finite");
    SeriesTruncation{opt.eta_max};

    probe_output(opt.output, true);

    const verify::VerifyReport report = verify::run(options);
    for (const verify::CheckResult& c : report.checks) {
        log << (c.passed ? "PASS " : "FAIL ") << c.name << " max_error=" << format_double(c.max_error)
            << " tolerance=" << format_double(c.tolerance) << '\n';
    }
    const nlohmann::json config{{"perturb", opt.perturb}, {"eta_max", opt.eta_max}};
    write_with_sidecar(opt.output, to_json(report, options).dump(2) + "\n", "verify", config);
    return report.all_passed ? kOk : kNumerical;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Gaussian-ensemble Wigner flow of the Lotka-Volterra system", "lvflow"};
    app.set_version_flag("--version", "lvflow 0.1.0");
    app.set_config("--config", "", "TOML config file; command-line flags take precedence");
    app.require_subcommand(1);

    FlowFieldOptions flow;
    auto* flow_cmd = app.add_subcommand("flow-field", "Evaluate every flow quantity on a grid (CSV)");
    flow_cmd->add_option("--a", flow.a, "Prey-predator coupling a > 0")->required();
    flow_cmd->add_option("--alpha", flow.alpha, "Gaussian spreading alpha > 0")->required();
    flow_cmd->add_option("--x-range", flow.x_range, "lo,hi")->delimiter(',')->expected(2)->capture_default_str();
    flow_cmd->add_option("--k-range", flow.k_range, "lo,hi")->delimiter(',')->expected(2)->capture_default_str();
    flow_cmd->add_option("--resolution", flow.resolution, "Nodes per axis")->capture_default_str();
    flow_cmd->add_option("--speed-threshold", flow.speed_threshold, "|w| bar for the svg map")->capture_default_str();
    flow_cmd->add_option("-o,--output", flow.output, "CSV path, or - for stdout")->required();
    flow_cmd->add_option("--svg", flow.svg, "Also write an |w| envelope map");

    TrajectoryOptions traj;
    auto* traj_cmd = app.add_subcommand("trajectory", "Integrate classical and/or quantum trajectories (CSV)");
    traj_cmd->add_option("--mode", traj.mode, "classical | quantum | both")
        ->check(CLI::IsMember({"classical", "quantum", "both"}))
        ->capture_default_str();
    traj_cmd->add_option("--a", traj.a, "Prey-predator coupling a > 0")->required();
    traj_cmd->add_option("--alpha", traj.alpha, "Gaussian spreading alpha > 0 (quantum modes)");
    traj_cmd->add_option("--x0", traj.x0, "Initial x")->capture_default_str();
    traj_cmd->add_option("--k0", traj.k0, "Initial k")->capture_default_str();
    traj_cmd->add_option("--t-end", traj.t_end, "Final time")->capture_default_str();
    traj_cmd->add_option("--sample-interval", traj.sample_interval, "Output cadence")->capture_default_str();
    traj_cmd->add_option("--rel-tol", traj.rel_tol)->capture_default_str();
    traj_cmd->add_option("--abs-tol", traj.abs_tol)->capture_default_str();
    traj_cmd->add_option("--max-step", traj.max_step)->capture_default_str();
    traj_cmd->add_option("--threshold", traj.threshold, "Extinction threshold")->capture_default_str();
    traj_cmd->add_option("-o,--output", traj.output, "CSV path, or - for stdout")->required();
    traj_cmd->add_option("--extinction-report", traj.extinction_report, "Also write an extinction report (JSON)");
    traj_cmd->add_option("--svg", traj.svg, "Also write a species time-series plot");

    EquilibriaOptions eq;
    auto* eq_cmd = app.add_subcommand("equilibria", "Zero census of the quantum velocity for each alpha (JSON)");
    eq_cmd->add_option("--alphas", eq.alphas, "Comma-separated alphas")->delimiter(',')->required();
    eq_cmd->add_option("--a", eq.a, "Prey-predator coupling a > 0")->required();
    eq_cmd->add_option("--range", eq.range, "lo,hi for both axes")->delimiter(',')->expected(2)->capture_default_str();
    eq_cmd->add_option("--resolution", eq.resolution, "Nodes per axis")->capture_default_str();
    eq_cmd->add_option("--speed-threshold", eq.speed_threshold, "Envelope bar on |w|")->capture_default_str();
    eq_cmd->add_option("-o,--output", eq.output, "JSON path, or - for stdout")->required();

    ExtinctionOptions ext;
    auto* ext_cmd = app.add_subcommand("extinction", "Extinction windows of a trajectory CSV (JSON)");
    ext_cmd->add_option("-i,--input", ext.input, "CSV written by the trajectory command")->required();
    ext_cmd->add_option("--threshold", ext.threshold, "Extinction threshold")->capture_default_str();
    ext_cmd->add_option("-o,--output", ext.output, "JSON path, or - for stdout")->required();

    VerifyCommandOptions ver;
    auto* ver_cmd = app.add_subcommand("verify", "Cross-validation suite; exits 2 if any check fails");
    ver_cmd->add_option("--perturb", ver.perturb, "Scale the closed-form d_x J_x by (1 + value)")
        ->capture_default_str();
    ver_cmd->add_option("--eta-max", ver.eta_max, "Series truncation")->capture_default_str();
    ver_cmd->add_option("-o,--output", ver.output, "Report path, or - for stdout")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (*flow_cmd) {
            return cmd_flow_field(flow);
        }
        if (*traj_cmd) {
            return cmd_trajectory(traj);
        }
        if (*eq_cmd) {
            return cmd_equilibria(eq);
        }
        if (*ext_cmd) {
            return cmd_extinction(ext);
        }
        return cmd_verify(ver, err);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return kNumerical;
    }
}

} // namespace lvflow::app
