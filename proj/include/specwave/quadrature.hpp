// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "specwave/types.hpp"

namespace specwave {

struct QuadratureResult {
    cd value;
    double error_estimate = 0.0;
    int evaluations = 0;
};

// Adaptive Gauss-Kronrod 7/15 for complex-valued integrands on [a, b].
// Bisects until the local |GK15 - G7| estimate meets the absolute tolerance
// (split evenly between halves) or max_depth is reached.
QuadratureResult integrate(const std::function<cd(double)>& f, double a, double b,
                           double abs_tol, int max_depth = 48);

}  // namespace specwave
