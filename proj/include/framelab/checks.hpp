#pragma once

// Numerical validation suite: every structural identity and optimality
// property the library relies on is wired to a named pass/fail experiment
// with frozen tolerances, runnable one at a time or as a whole.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "framelab/dual_chart.hpp"
#include "framelab/frame.hpp"

namespace framelab {

enum class CheckStatus { pass, fail, hypothesis_not_met };

std::string check_status_name(CheckStatus s);

struct CheckResult {
    std::string id;
    CheckStatus status = CheckStatus::fail;
    double tolerance = 0.0;
    // named numeric payload (worst deviations, counts, frozen constants)
    std::vector<std::pair<std::string, double>> evidence;
    std::vector<std::string> notes;
};

struct CheckInfo {
    std::string id;
    std::string claim;  // one-line statement of what is verified
};

// Registered checks, in suite order. Excludes the negative control.
const std::vector<CheckInfo>& check_registry();

bool is_known_check(const std::string& id);

// Runs one check on its built-in instance set. "negative-control" is a
// harness self-test that fails by construction. Throws UnknownCheckId.
CheckResult run_check(const std::string& id, std::uint64_t seed);

// As above, with caller-provided frames replacing the built-in instances
// where the check consumes frames; returns hypothesis_not_met if they do not
// satisfy the check's hypotheses.
CheckResult run_check(const std::string& id, const std::vector<Frame>& frames,
                      std::uint64_t seed);

// All registered checks with per-check seeds derived from `seed`.
std::vector<CheckResult> run_suite(std::uint64_t seed);

bool all_passed(const std::vector<CheckResult>& results);

// Test-instance generators shared by the suite and the integration tests.

// Frames whose canonical dual has all diagonal inner products equal to n/N:
// uniform tight frames plus invertible recombinations of Parseval ones.
std::vector<Frame> one_uniform_test_frames(std::size_t count, std::uint64_t seed);

// Chart parameters of duals with every <f_i, g_i> pinned at n/N, sampled
// from the null space of the corresponding linear system. Empty when the
// canonical dual is the only such dual.
std::vector<CMatrix> one_uniform_dual_parameters(const DualChart& chart, std::size_t count,
                                                 std::uint64_t seed);

}  // namespace framelab
