// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specwave/types.hpp"

namespace specwave {

struct SuiteRow {
    std::string suite;
    std::string label;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string note;
};

struct ValidateOptions {
    std::uint64_t seed = 7;
    int A = 32;           // truncation for the randomized suites
    int roundtrip_instances = 8;
};

// Runs every invariant suite (solution residuals, Wronskian constancy,
// renormalized-solution proportionality, large-lambda asymptote, derivative
// identity, singular limit, resolvent application, round trips, truncation
// diagnostics, zero-potential closed forms). Deterministic for a fixed
// seed/options.
std::vector<SuiteRow> run_validation(const ValidateOptions& options);

bool all_passed(const std::vector<SuiteRow>& rows);

// Fixed-width text table; identical options produce identical bytes.
std::string format_validation_report(const std::vector<SuiteRow>& rows,
                                     const ValidateOptions& options);

}  // namespace specwave
