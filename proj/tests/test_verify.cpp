#include "lvflow/error.hpp"
#include "lvflow/verify.hpp"

#include <doctest.h>

#include <algorithm>

using namespace lvflow;

namespace {

const verify::CheckResult& find(const verify::VerifyReport& r, const std::string& name)
{
    const auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const auto& c) { return c.name == name; });
    REQUIRE(it != r.checks.end());
    return *it;
}

} // namespace

TEST_CASE("verify: healthy build passes every check")
{
    const verify::VerifyReport r = verify::run();
    for (const verify::CheckResult& c : r.checks) {
        INFO(c.name << " max_error " << c.max_error);
        CHECK(c.passed);
        CHECK(c.evaluations > 0);
    }
    CHECK(r.all_passed);
    REQUIRE(r.convergence.size() == 26);
    CHECK(r.convergence.front().max_error > 1.0);
    CHECK(r.convergence.back().max_error <= 1e-10);
    CHECK_FALSE(r.validity_note.empty());
}

TEST_CASE("verify: injected perturbation of d_x J_x is caught")
{
    verify::VerifyOptions opt;
    opt.div_jx_perturbation = 1e-6;
    const verify::VerifyReport r = verify::run(opt);
    CHECK_FALSE(r.all_passed);
    CHECK_FALSE(find(r, "series_divergence").passed);
    CHECK(find(r, "erf_maclaurin").passed);
}

TEST_CASE("verify: option validation")
{
    verify::VerifyOptions opt;
    opt.eta_max = 61;
    CHECK_THROWS_AS(verify::run(opt), DomainError);
    opt = {};
    opt.grid_points = 1;
    CHECK_THROWS_AS(verify::run(opt), DomainError);
}
