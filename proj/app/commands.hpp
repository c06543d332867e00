#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lvflow::app {

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2, kIo = 3 };

struct FlowFieldOptions {
    double a = 0.0;
    double alpha = 0.0;
    std::vector<double> x_range{-3.0, 3.0};
    std::vector<double> k_range{-3.0, 3.0};
    int resolution = 256;
    double speed_threshold = 0.07; ///< only used by the svg map
    std::string output;
    std::string svg;
};

struct TrajectoryOptions {
    std::string mode = "both";
    double a = 0.0;
    std::optional<double> alpha;
    double x0 = 1.0;
    double k0 = 0.0;
    double t_end = 100.0;
    double sample_interval = 0.1;
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.1;
    double threshold = 0.04;
    std::string output;
    std::string extinction_report;
    std::string svg;
};

struct EquilibriaOptions {
    std::vector<double> alphas;
    double a = 0.0;
    std::vector<double> range{-3.0, 3.0};
    int resolution = 256;
    double speed_threshold = 0.07;
    std::string output;
};

struct ExtinctionOptions {
    std::string input;
    double threshold = 0.04;
    std::string output;
};

struct VerifyCommandOptions {
    double perturb = 0.0;
    int eta_max = 25;
    std::string output = "-";
};

// Each command validates everything, checks its outputs are writable, then
// computes and writes. Errors surface as lvflow exceptions.
int cmd_flow_field(const FlowFieldOptions& opt);
int cmd_trajectory(const TrajectoryOptions& opt);
int cmd_equilibria(const EquilibriaOptions& opt);
int cmd_extinction(const ExtinctionOptions& opt);
int cmd_verify(const VerifyCommandOptions& opt, std::ostream& log);

/// Parses argv, runs the chosen subcommand and maps failures to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace lvflow::app
