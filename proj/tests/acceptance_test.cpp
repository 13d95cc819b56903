// Acceptance checklist: every release criterion at its pinned tolerance,
// one pass/fail line per criterion.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdio>

#include "spinchain/validation.hpp"

namespace {

spinchain::CheckResult timed(spinchain::CheckResult (*fn)()) {
    const auto t0 = std::chrono::steady_clock::now();
    spinchain::CheckResult r = fn();
    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    std::printf("%s  [%.2fs]\n", spinchain::format_check(r).c_str(), dt.count());
    std::fflush(stdout);
    return r;
}

}  // namespace

TEST_CASE("acceptance criteria") {
    using namespace spinchain;
    const CheckResult results[] = {
        timed(acceptance_1_mixture_maximum),
        timed(acceptance_2_closed_form_quarter_pi),
        timed(acceptance_3_side_limits_n10),
        timed(acceptance_4_oracle_equivalence),
        timed(acceptance_5_factorization_residual),
        timed(acceptance_6_L_independence_n100),
        timed(acceptance_7_parity_transitions),
        timed(acceptance_8_strong_field),
        timed(acceptance_9_sector_energy_identity),
        timed(acceptance_10_property_suites),
    };
    for (const auto& r : results) {
        INFO(r.id << ": " << r.details);
        CHECK(r.pass);
    }
}
