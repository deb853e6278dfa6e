// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "specwave/solutions.hpp"
#include "specwave/spectral.hpp"
#include "specwave/vtable.hpp"

using namespace specwave;

namespace {

const cd kI(0.0, 1.0);

SolutionContext make_ctx(std::vector<cd> harmonics, double beta, int A) {
    Potential q;
    q.harmonics = std::move(harmonics);
    return SolutionContext(build_vtable(q, A), MediumProfile{beta});
}

double rel(cd got, cd want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("zero potential reduces to plane waves") {
    const SolutionContext ctx = make_ctx({}, 2.0, 6);
    const cd lam(0.8, 0.45);
    for (double x : {-1.5, 0.0, 0.7, 2.2}) {
        CHECK(rel(eval_f1(ctx, x, lam, Sign::plus), std::exp(kI * lam * x)) <= 1e-15);
        CHECK(rel(eval_f1(ctx, x, lam, Sign::plus, 1), kI * lam * std::exp(kI * lam * x)) <=
              1e-15);
        CHECK(rel(eval_f2(ctx, x, lam, Sign::plus), std::exp(-kI * lam * 2.0 * x)) <= 1e-15);
        CHECK(rel(eval_f2(ctx, x, lam, Sign::minus), std::exp(kI * lam * 2.0 * x)) <= 1e-15);
    }
    // slope at the origin: -i lambda beta
    CHECK(rel(eval_f2(ctx, 0.0, cd(0.3, 0.0), Sign::plus, 1), cd(0.0, -0.6)) <= 1e-15);
}

TEST_CASE("order-3 single-harmonic values at lambda = i") {
    const SolutionContext ctx = make_ctx({cd(1.0, 0.0)}, 2.0, 3);
    // row sums of the hand table: -7/12, -1/3, -1/12
    const cd r1(-7.0 / 12.0, 0.0), r2(-1.0 / 3.0, 0.0), r3(-1.0 / 12.0, 0.0);
    const cd lam(0.0, 1.0);

    const cd f1_want = 1.0 + r1 / (1.0 + 2.0 * lam) + r2 / (2.0 + 2.0 * lam) +
                       r3 / (3.0 + 2.0 * lam);
    CHECK(rel(eval_f1(ctx, 0.0, lam, Sign::plus), f1_want) <= 1e-14);
    CHECK(rel(eval_f1(ctx, 0.0, lam, Sign::plus),
              cd(0.780769230769231, 0.329487179487179)) <= 1e-12);

    const cd f2_want = 1.0 + r1 / (1.0 - 4.0 * lam) + r2 / (2.0 - 4.0 * lam) +
                       r3 / (3.0 - 4.0 * lam);
    CHECK(rel(eval_f2(ctx, 0.0, lam, Sign::plus), f2_want) <= 1e-14);
}

TEST_CASE("sign flip is exactly evaluation at -lambda") {
    const SolutionContext ctx = make_ctx({cd(0.6, -0.3), cd(0.0, 0.4)}, 0.5, 12);
    const cd lam(1.1, 0.9);
    for (double x : {-0.8, 0.3, 1.9}) {
        CHECK(eval_f1(ctx, x, lam, Sign::minus) == eval_f1(ctx, x, -lam, Sign::plus));
        CHECK(eval_f2(ctx, x, lam, Sign::minus) == eval_f2(ctx, x, -lam, Sign::plus));
    }
}

TEST_CASE("renormalized solution") {
    SUBCASE("hand value at the origin") {
        const SolutionContext ctx = make_ctx({cd(1.0, 0.0)}, 2.0, 3);
        CHECK(rel(eval_fn(ctx, 2, 0.0), cd(-1.0 / 3.0, 0.0)) <= 1e-14);
    }
    SUBCASE("proportional to f1 at half-integer lambda") {
        const SolutionContext ctx = make_ctx({cd(0.7, 0.2), cd(-0.4, 0.0)}, 2.0, 24);
        for (int n : {1, 2, 5}) {
            const cd vnn = ctx.vtable.get(n, n);
            for (double x : {0.0, 0.9, 2.4}) {
                const cd want = vnn * eval_f1(ctx, x, cd(0.5 * n, 0.0), Sign::plus);
                CHECK(std::abs(eval_fn(ctx, n, x) - want) <= 1e-9);
            }
        }
    }
    SUBCASE("index must be inside the table") {
        const SolutionContext ctx = make_ctx({cd(1.0, 0.0)}, 2.0, 3);
        CHECK_THROWS_AS(eval_fn(ctx, 4, 0.0), std::invalid_argument);
    }
}

TEST_CASE("wronskians of the solution pairs") {
    const SolutionContext ctx = make_ctx({cd(1.0, 0.0)}, 2.0, 20);
    const cd lam(0.7, 0.6);
    SUBCASE("f1 pair equals -2 i lambda, x independent") {
        for (double x : {0.0, 0.8, 2.9}) {
            const cd w = wronskian(eval_f1(ctx, x, lam, Sign::plus),
                                   eval_f1(ctx, x, lam, Sign::plus, 1),
                                   eval_f1(ctx, x, lam, Sign::minus),
                                   eval_f1(ctx, x, lam, Sign::minus, 1));
            CHECK(rel(w, -2.0 * kI * lam) <= 1e-10);
        }
    }
    SUBCASE("f2 pair equals 2 i lambda beta") {
        for (double x : {-2.5, -0.4, 0.0}) {
            const cd w = wronskian(eval_f2(ctx, x, lam, Sign::plus),
                                   eval_f2(ctx, x, lam, Sign::plus, 1),
                                   eval_f2(ctx, x, lam, Sign::minus),
                                   eval_f2(ctx, x, lam, Sign::minus, 1));
            CHECK(rel(w, 2.0 * kI * lam * 2.0) <= 1e-10);
        }
    }
    SUBCASE("antisymmetry of the bracket") {
        const cd w1 = wronskian(cd(1, 2), cd(3, -1), cd(0, 1), cd(2, 2));
        const cd w2 = wronskian(cd(0, 1), cd(2, 2), cd(1, 2), cd(3, -1));
        CHECK(w1 == -w2);
    }
}

TEST_CASE("normalization at large imaginary x") {
    const SolutionContext ctx = make_ctx({cd(0.3, 0.1)}, 2.0, 8);
    const cd lam(0.8, 0.6);
    const cd x(0.0, 40.0);
    const cd f1 = eval_f1_complex_x(ctx, x, lam, Sign::plus) * std::exp(-kI * lam * x);
    CHECK(std::abs(f1 - 1.0) <= 1e-12);
    const cd f2 = eval_f2_complex_x(ctx, x, lam, Sign::plus) * std::exp(kI * lam * 2.0 * x);
    CHECK(std::abs(f2 - 1.0) <= 1e-12);
}

TEST_CASE("continuation across the interface") {
    const SolutionContext ctx = make_ctx({cd(0.5, 0.0), cd(0.0, -0.2)}, 0.5, 16);
    const cd lam(0.6, 0.7);
    const ScatteringCoeffs coeffs = scattering_coeffs(ctx, lam);

    SUBCASE("value and slope agree at x = 0") {
        const cd f2v = eval_f2(ctx, 0.0, lam, Sign::plus);
        const cd f2s = eval_f2(ctx, 0.0, lam, Sign::plus, 1);
        CHECK(std::abs(extend_solution(ctx, coeffs, Extension::f2_right, 0.0, lam) - f2v) <=
              1e-12 * (1.0 + std::abs(f2v)));
        CHECK(std::abs(extend_solution(ctx, coeffs, Extension::f2_right, 0.0, lam, 1) - f2s) <=
              1e-12 * (1.0 + std::abs(f2s)));

        const cd f1v = eval_f1(ctx, 0.0, lam, Sign::plus);
        const cd f1s = eval_f1(ctx, 0.0, lam, Sign::plus, 1);
        CHECK(std::abs(extend_solution(ctx, coeffs, Extension::f1_left, 0.0, lam) - f1v) <=
              1e-12 * (1.0 + std::abs(f1v)));
        CHECK(std::abs(extend_solution(ctx, coeffs, Extension::f1_left, 0.0, lam, 1) - f1s) <=
              1e-12 * (1.0 + std::abs(f1s)));
    }

    SUBCASE("extension satisfies the equation on its side") {
        const Potential q{{cd(0.5, 0.0), cd(0.0, -0.2)}};
        const auto qx = [&](double x) {
            cd v(0.0, 0.0);
            for (int n = 1; n <= q.order(); ++n) v += q.coeff(n) * std::exp(kI * (1.0 * n) * x);
            return v;
        };
        const double h = 1e-3;
        {
            // continued f2 lives on x >= 0 where the weight is 1
            const double x = 1.1;
            const auto f = [&](double s) {
                return extend_solution(ctx, coeffs, Extension::f2_right, s, lam);
            };
            const cd res = -(f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h) + qx(x) * f(x) -
                           lam * lam * f(x);
            CHECK(std::abs(res) <= 1e-5 * (1.0 + std::norm(lam)) * std::abs(f(x)));
        }
        {
            // continued f1 lives on x < 0 where the weight is beta^2
            const double x = -0.9, b2 = 0.25;
            const auto f = [&](double s) {
                return extend_solution(ctx, coeffs, Extension::f1_left, s, lam);
            };
            const cd res = -(f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h) + qx(x) * f(x) -
                           lam * lam * b2 * f(x);
            CHECK(std::abs(res) <= 1e-5 * (1.0 + std::norm(lam)) * std::abs(f(x)));
        }
    }
}

TEST_CASE("series poles raise PoleAtLambda") {
    const SolutionContext ctx = make_ctx({cd(1.0, 0.0)}, 2.0, 6);
    CHECK_THROWS_AS(eval_f1(ctx, 0.3, cd(-0.5, 0.0), Sign::plus), PoleAtLambda);
    CHECK_THROWS_AS(eval_f1(ctx, 0.3, cd(0.5, 0.0), Sign::minus), PoleAtLambda);
    CHECK_THROWS_AS(eval_f2(ctx, -0.3, cd(0.25, 0.0), Sign::plus), PoleAtLambda);
    CHECK_NOTHROW(eval_f1(ctx, 0.3, cd(0.5, 0.0), Sign::plus));
}

TEST_CASE("exact lambda derivatives match finite differences") {
    const SolutionContext ctx = make_ctx({cd(0.4, 0.3), cd(-0.2, 0.1)}, 3.0, 16);
    const cd lam(0.43, 0.61);
    const double h = 1e-5;
    for (int order : {0, 1}) {
        {
            const ValueAndSlope vs = eval_f1_dlambda(ctx, 0.9, lam, Sign::plus, order);
            CHECK(vs.value == eval_f1(ctx, 0.9, lam, Sign::plus, order));
            const cd fd = (eval_f1(ctx, 0.9, lam + h, Sign::plus, order) -
                           eval_f1(ctx, 0.9, lam - h, Sign::plus, order)) /
                          (2.0 * h);
            CHECK(std::abs(vs.dlambda - fd) <= 1e-6 * (1.0 + std::abs(vs.dlambda)));
        }
        {
            const ValueAndSlope vs = eval_f2_dlambda(ctx, -0.7, lam, Sign::minus, order);
            CHECK(vs.value == eval_f2(ctx, -0.7, lam, Sign::minus, order));
            const cd fd = (eval_f2(ctx, -0.7, lam + h, Sign::minus, order) -
                           eval_f2(ctx, -0.7, lam - h, Sign::minus, order)) /
                          (2.0 * h);
            CHECK(std::abs(vs.dlambda - fd) <= 1e-6 * (1.0 + std::abs(vs.dlambda)));
        }
    }
}
