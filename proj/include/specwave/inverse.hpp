// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>

#include "specwave/types.hpp"
#include "specwave/vtable.hpp"

namespace specwave {

struct C12Sample {
    double t = 0.0;  // sample point lambda = i t on the positive imaginary axis
    cd value;
};

// The inverse problem's input: the table diagonal (normalizing numbers)
// plus either the asymptotic value of C12 on the imaginary axis or finitely
// many samples along it (strictly increasing t, at least 3).
struct SpectralData {
    std::vector<cd> normalizing_numbers;  // V_{1,1} ... V_{A,A}
    std::optional<cd> asymptote;
    std::vector<C12Sample> samples;       // empty when asymptote is present

    int A() const { return static_cast<int>(normalizing_numbers.size()); }
};

void require_valid(const SpectralData& data);

struct BetaRecovery {
    double beta = 0.0;
    double extrapolation_residual = 0.0;  // spread of the corrected samples around the fit
    double imag_drift = 0.0;              // |Im| of the extrapolated limit
};

// beta = -2 Re(lim C12(it)) - 1. With the asymptote given this is direct
// (its imaginary part must be below 1e-8). With samples, the limit is
// extrapolated in 1/t from the last three points; the O(1/t) transient is
// then removed by re-evaluating the model C12 from the table reconstructed
// out of the normalizing numbers, which takes the extrapolation to rounding
// level. Throws NonRealAsymptote / NonPositiveBeta.
BetaRecovery recover_beta_full(const SpectralData& data);

inline double recover_beta(const SpectralData& data) {
    return recover_beta_full(data).beta;
}

struct InverseResult {
    double beta = 0.0;
    Potential potential;
    VTable vtable;
    std::map<std::string, double> diagnostics;
};

// Reconstruct the table from the diagonal, read the potential off the
// columns, recover beta from the C12 data.
InverseResult solve_inverse(const SpectralData& data);

struct RoundTripReport {
    int A = 0;
    double beta_in = 0.0;
    double beta_out = 0.0;
    double beta_abs_err = 0.0;
    double q_max_rel_err = 0.0;    // relative where |q_n| > 1e-9, absolute otherwise
    double vtable_max_err = 0.0;   // entrywise, relative to max(|entry|, 1)
};

// Forward map (build table, sample C12 at t in {50, 100, 200}), then the
// inverse procedure; reports how well the inputs come back.
RoundTripReport round_trip(const Potential& q, const MediumProfile& medium, int A);

}  // namespace specwave
