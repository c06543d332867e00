#pragma once

#include <string>
#include <vector>

namespace lvflow::verify {

struct VerifyOptions {
    /// Multiplies the closed-form d_x J_x by (1 + perturbation) before it is
    /// compared; nonzero values exist to prove the suite can fail.
    double div_jx_perturbation = 0.0;
    int eta_max = 25;
    int grid_points = 21; ///< nodes per axis on [-3, 3]^2
};

struct CheckResult {
    std::string name;
    std::string description;
    double max_error = 0.0;
    double tolerance = 0.0;
    long evaluations = 0;
    bool passed = false;
};

struct ConvergencePoint {
    int eta_max = 0;
    double max_error = 0.0; ///< max relative |series w - closed-form w|
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    std::vector<ConvergencePoint> convergence; ///< alpha = 1, a = 1 on the check grid
    std::string validity_note;
    bool all_passed = false;
};

VerifyReport run(const VerifyOptions& options = {});

} // namespace lvflow::verify
