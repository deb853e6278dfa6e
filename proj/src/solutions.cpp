// SPDX-License-Identifier: Apache-2.0
#include "specwave/solutions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "specwave/spectral.hpp"

namespace specwave {

namespace {

constexpr double kPoleGuard = 1e-12;

cd expi(cd z) { return std::exp(cd(0.0, 1.0) * z); }

[[noreturn]] void throw_pole(const char* fn, int n, cd denom) {
    throw PoleAtLambda(std::string(fn) + ": series denominator vanished at n=" +
                       std::to_string(n) + " (|den|=" + std::to_string(std::abs(denom)) + ")");
}

// Row sums S(x) = sum_n row_n(x)/den_n and their x-slopes, shared by the f1
// and f2 series. den_n = n + 2*lambda for f1, n - 2*lambda*beta for f2.
struct SeriesSums {
    cd value;  // sum_n row_n(x) / den_n
    cd slope;  // sum_n row_n'(x) / den_n
};

template <typename DenFn>
SeriesSums series_sums(const VTable& v, cd x, DenFn den_of, const char* fn) {
    SeriesSums s{cd(0.0, 0.0), cd(0.0, 0.0)};
    if (v.A < 1) return s;
    // e^{i alpha x} via a cumulative product: one exp per evaluation instead
    // of one per table entry (this sits inside every quadrature loop)
    std::vector<cd> powers(static_cast<size_t>(v.A) + 1);
    const cd base = expi(x);
    powers[1] = base;
    for (int alpha = 2; alpha <= v.A; ++alpha)
        powers[static_cast<size_t>(alpha)] = powers[static_cast<size_t>(alpha - 1)] * base;
    for (int n = 1; n <= v.A; ++n) {
        const cd den = den_of(n);
        if (std::abs(den) < kPoleGuard) throw_pole(fn, n, den);
        cd row(0.0, 0.0), rowp(0.0, 0.0);
        for (int alpha = n; alpha <= v.A; ++alpha) {
            const cd e = v.get(n, alpha) * powers[static_cast<size_t>(alpha)];
            row += e;
            rowp += cd(0.0, static_cast<double>(alpha)) * e;
        }
        s.value += row / den;
        s.slope += rowp / den;
    }
    return s;
}

cd f1_impl(const SolutionContext& ctx, cd x, cd lambda_eff, int order) {
    const SeriesSums s = series_sums(
        ctx.vtable, x, [&](int n) { return static_cast<double>(n) + 2.0 * lambda_eff; },
        "eval_f1");
    const cd E = expi(lambda_eff * x);
    if (order == 0) return E * (1.0 + s.value);
    return E * (cd(0.0, 1.0) * lambda_eff * (1.0 + s.value) + s.slope);
}

cd f2_impl(const SolutionContext& ctx, cd x, cd lambda_eff, int order) {
    const double beta = ctx.medium.beta;
    const SeriesSums s = series_sums(
        ctx.vtable, x,
        [&](int n) { return static_cast<double>(n) - 2.0 * lambda_eff * beta; }, "eval_f2");
    const cd E = expi(-lambda_eff * beta * x);
    if (order == 0) return E * (1.0 + s.value);
    return E * (cd(0.0, -1.0) * lambda_eff * beta * (1.0 + s.value) + s.slope);
}

void check_order(int order) {
    if (order != 0 && order != 1)
        throw std::invalid_argument("solution evaluation: order must be 0 or 1");
}

}  // namespace

SolutionContext::SolutionContext(VTable v, MediumProfile m)
    : vtable(std::move(v)), medium(m) {
    require_valid(medium);
    rs_value.assign(static_cast<size_t>(vtable.A) + 1, cd(0.0, 0.0));
    rs_slope.assign(static_cast<size_t>(vtable.A) + 1, cd(0.0, 0.0));
    for (int n = 1; n <= vtable.A; ++n) {
        for (int alpha = n; alpha <= vtable.A; ++alpha) {
            const cd entry = vtable.get(n, alpha);
            rs_value[static_cast<size_t>(n)] += entry;
            rs_slope[static_cast<size_t>(n)] += cd(0.0, static_cast<double>(alpha)) * entry;
        }
    }
}

cd eval_f1(const SolutionContext& ctx, double x, cd lambda, Sign sign, int order) {
    check_order(order);
    const cd lam = sign == Sign::plus ? lambda : -lambda;
    return f1_impl(ctx, cd(x, 0.0), lam, order);
}

cd eval_f2(const SolutionContext& ctx, double x, cd lambda, Sign sign, int order) {
    check_order(order);
    const cd lam = sign == Sign::plus ? lambda : -lambda;
    return f2_impl(ctx, cd(x, 0.0), lam, order);
}

cd eval_f1_complex_x(const SolutionContext& ctx, cd x, cd lambda, Sign sign, int order) {
    check_order(order);
    return f1_impl(ctx, x, sign == Sign::plus ? lambda : -lambda, order);
}

cd eval_f2_complex_x(const SolutionContext& ctx, cd x, cd lambda, Sign sign, int order) {
    check_order(order);
    return f2_impl(ctx, x, sign == Sign::plus ? lambda : -lambda, order);
}

cd eval_fn(const SolutionContext& ctx, int n, double x, Sign /*sign*/) {
    if (n < 1 || n > ctx.vtable.A)
        throw std::invalid_argument("eval_fn: index outside the table");
    cd row(0.0, 0.0);
    for (int alpha = n; alpha <= ctx.vtable.A; ++alpha)
        row += ctx.vtable.get(n, alpha) * expi(cd(static_cast<double>(alpha) * x, 0.0));
    return row * expi(cd(-0.5 * n * x, 0.0));
}

cd extend_solution(const SolutionContext& ctx, const ScatteringCoeffs& coeffs,
                   Extension which, double x, cd lambda, int order) {
    check_order(order);
    if (which == Extension::f2_right) {
        return coeffs.combo_a * eval_f1(ctx, x, lambda, Sign::plus, order) +
               coeffs.combo_b * eval_f1(ctx, x, lambda, Sign::minus, order);
    }
    // f1(+) in the f2 basis; solved here since ScatteringCoeffs only carries
    // the f2-side combination.
    const cd f1p = eval_f1(ctx, 0.0, lambda, Sign::plus, 0);
    const cd f1pd = eval_f1(ctx, 0.0, lambda, Sign::plus, 1);
    const cd f2p = eval_f2(ctx, 0.0, lambda, Sign::plus, 0);
    const cd f2pd = eval_f2(ctx, 0.0, lambda, Sign::plus, 1);
    const cd f2m = eval_f2(ctx, 0.0, lambda, Sign::minus, 0);
    const cd f2md = eval_f2(ctx, 0.0, lambda, Sign::minus, 1);
    const cd det = f2p * f2md - f2m * f2pd;
    if (std::abs(det) < 1e-12)
        throw DegenerateBasis("extend_solution: interface basis is numerically singular");
    const cd a = (f1p * f2md - f2m * f1pd) / det;
    const cd b = (f2p * f1pd - f1p * f2pd) / det;
    return a * eval_f2(ctx, x, lambda, Sign::plus, order) +
           b * eval_f2(ctx, x, lambda, Sign::minus, order);
}

ValueAndSlope eval_f1_dlambda(const SolutionContext& ctx, double x, cd lambda,
                              Sign sign, int order) {
    check_order(order);
    const double s = sign == Sign::plus ? 1.0 : -1.0;
    const cd lam = s * lambda;
    cd S(0.0, 0.0), Sp(0.0, 0.0), dS(0.0, 0.0), dSp(0.0, 0.0);
    for (int n = 1; n <= ctx.vtable.A; ++n) {
        const cd den = static_cast<double>(n) + 2.0 * lam;
        if (std::abs(den) < kPoleGuard) throw_pole("eval_f1_dlambda", n, den);
        cd row(0.0, 0.0), rowp(0.0, 0.0);
        for (int alpha = n; alpha <= ctx.vtable.A; ++alpha) {
            const cd e = ctx.vtable.get(n, alpha) * expi(cd(static_cast<double>(alpha) * x, 0.0));
            row += e;
            rowp += cd(0.0, static_cast<double>(alpha)) * e;
        }
        S += row / den;
        Sp += rowp / den;
        dS += -2.0 * row / (den * den);
        dSp += -2.0 * rowp / (den * den);
    }
    const cd E = expi(lam * cd(x, 0.0));
    const cd i(0.0, 1.0);
    ValueAndSlope out;
    if (order == 0) {
        out.value = E * (1.0 + S);
        out.dlambda = s * (i * x * out.value + E * dS);
    } else {
        out.value = E * (i * lam * (1.0 + S) + Sp);
        out.dlambda = s * (i * x * out.value + E * (i * (1.0 + S) + i * lam * dS + dSp));
    }
    return out;
}

ValueAndSlope eval_f2_dlambda(const SolutionContext& ctx, double x, cd lambda,
                              Sign sign, int order) {
    check_order(order);
    const double s = sign == Sign::plus ? 1.0 : -1.0;
    const cd lam = s * lambda;
    const double beta = ctx.medium.beta;
    cd S(0.0, 0.0), Sp(0.0, 0.0), dS(0.0, 0.0), dSp(0.0, 0.0);
    for (int n = 1; n <= ctx.vtable.A; ++n) {
        const cd den = static_cast<double>(n) - 2.0 * lam * beta;
        if (std::abs(den) < kPoleGuard) throw_pole("eval_f2_dlambda", n, den);
        cd row(0.0, 0.0), rowp(0.0, 0.0);
        for (int alpha = n; alpha <= ctx.vtable.A; ++alpha) {
            const cd e = ctx.vtable.get(n, alpha) * expi(cd(static_cast<double>(alpha) * x, 0.0));
            row += e;
            rowp += cd(0.0, static_cast<double>(alpha)) * e;
        }
        S += row / den;
        Sp += rowp / den;
        dS += 2.0 * beta * row / (den * den);
        dSp += 2.0 * beta * rowp / (den * den);
    }
    const cd E = expi(-lam * beta * cd(x, 0.0));
    const cd i(0.0, 1.0);
    ValueAndSlope out;
    if (order == 0) {
        out.value = E * (1.0 + S);
        out.dlambda = s * (-i * beta * x * out.value + E * dS);
    } else {
        out.value = E * (-i * lam * beta * (1.0 + S) + Sp);
        out.dlambda =
            s * (-i * beta * x * out.value +
                 E * (-i * beta * (1.0 + S) - i * lam * beta * dS + dSp));
    }
    return out;
}

}  // namespace specwave
