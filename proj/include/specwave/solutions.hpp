// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "specwave/types.hpp"
#include "specwave/vtable.hpp"

namespace specwave {

struct ScatteringCoeffs;  // spectral.hpp

enum class Sign { plus, minus };

// Immutable evaluation context. Besides the table itself it carries the
// interface row aggregates
//   rs_value[n] = sum_alpha V_{n,alpha}
//   rs_slope[n] = sum_alpha (i alpha) V_{n,alpha}
// so the x = 0 values needed by every scattering computation cost O(A)
// per lambda instead of O(A^2).
struct SolutionContext {
    VTable vtable;
    MediumProfile medium;
    std::vector<cd> rs_value;
    std::vector<cd> rs_slope;

    SolutionContext(VTable v, MediumProfile m);
};

// f1(x, lambda): e^{i lambda x} (1 + sum_n (1/(n+2 lambda)) sum_alpha V_{n,alpha} e^{i alpha x}).
// Sign minus evaluates at -lambda, so eval_f1(x, lambda, minus) ==
// eval_f1(x, -lambda, plus) exactly. order 1 returns the x-derivative of the
// truncated series, differentiated term by term.
cd eval_f1(const SolutionContext& ctx, double x, cd lambda, Sign sign, int order = 0);

// f2(x, lambda): e^{-i lambda beta x} (1 + sum_n (1/(n-2 lambda beta)) sum_alpha V_{n,alpha} e^{i alpha x}).
cd eval_f2(const SolutionContext& ctx, double x, cd lambda, Sign sign, int order = 0);

// Complex-x variants (the series is entire in x); used for the
// Im x -> +infinity normalization checks.
cd eval_f1_complex_x(const SolutionContext& ctx, cd x, cd lambda, Sign sign, int order = 0);
cd eval_f2_complex_x(const SolutionContext& ctx, cd x, cd lambda, Sign sign, int order = 0);

// Renormalized solution: e^{-inx/2} sum_{alpha>=n} V_{n,alpha} e^{i alpha x},
// the regularized limit of (n +- 2 lambda) f1 at lambda = -+ n/2. Both signs
// give the same value; the parameter is kept for symmetry with eval_f1.
cd eval_fn(const SolutionContext& ctx, int n, double x, Sign sign = Sign::plus);

// Fixed convention throughout: W[f, g] = f g' - f' g.
inline cd wronskian(cd f, cd fp, cd g, cd gp) { return f * gp - fp * g; }

// Which solution gets continued across the interface.
enum class Extension {
    f1_left,   // f1(+) expressed in the f2 basis, for x < 0
    f2_right,  // f2(+) expressed in the f1 basis, for x >= 0
};

// Linear-combination continuation across x = 0. For f2_right the combination
// coefficients come from coeffs (combo_a, combo_b); for f1_left the analogous
// 2x2 solve in the f2 basis is done here. Value and x-derivative match the
// native side at x = 0 by construction.
cd extend_solution(const SolutionContext& ctx, const ScatteringCoeffs& coeffs,
                   Extension which, double x, cd lambda, int order = 0);

// Value and d/dlambda of f1 / f2 (order 0: the value, order 1: the
// x-derivative), both differentiated in lambda exactly, term by term.
struct ValueAndSlope {
    cd value;
    cd dlambda;
};

ValueAndSlope eval_f1_dlambda(const SolutionContext& ctx, double x, cd lambda,
                              Sign sign, int order = 0);
ValueAndSlope eval_f2_dlambda(const SolutionContext& ctx, double x, cd lambda,
                              Sign sign, int order = 0);

}  // namespace specwave
