// SPDX-License-Identifier: Apache-2.0
#include "specwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "specwave/quadrature.hpp"

namespace specwave {

namespace {

constexpr double kPoleGuard = 1e-12;
constexpr double kBasisGuard = 1e-12;
constexpr double kMinImag = 1e-3;

const cd kI(0.0, 1.0);

// All eight interface values at x = 0 from the cached row aggregates.
struct InterfaceValues {
    cd f1p, f1pd;  // f1 at +lambda, value and x-derivative
    cd f1m, f1md;  // f1 at -lambda
    cd f2p, f2pd;  // f2 at +lambda
    cd f2m, f2md;  // f2 at -lambda
};

struct SumPair {
    cd value, slope;
};

template <typename DenFn>
SumPair row_accumulate(const SolutionContext& ctx, DenFn den_of) {
    SumPair s{cd(0.0, 0.0), cd(0.0, 0.0)};
    for (int n = 1; n <= ctx.vtable.A; ++n) {
        const cd den = den_of(n);
        if (std::abs(den) < kPoleGuard)
            throw PoleAtLambda("scattering: series denominator vanished at n=" +
                               std::to_string(n));
        s.value += ctx.rs_value[static_cast<size_t>(n)] / den;
        s.slope += ctx.rs_slope[static_cast<size_t>(n)] / den;
    }
    return s;
}

InterfaceValues interface_values(const SolutionContext& ctx, cd lambda) {
    const double beta = ctx.medium.beta;
    const SumPair s1p = row_accumulate(ctx, [&](int n) { return double(n) + 2.0 * lambda; });
    const SumPair s1m = row_accumulate(ctx, [&](int n) { return double(n) - 2.0 * lambda; });
    const SumPair s2p =
        row_accumulate(ctx, [&](int n) { return double(n) - 2.0 * lambda * beta; });
    const SumPair s2m =
        row_accumulate(ctx, [&](int n) { return double(n) + 2.0 * lambda * beta; });
    InterfaceValues iv;
    iv.f1p = 1.0 + s1p.value;
    iv.f1pd = kI * lambda * iv.f1p + s1p.slope;
    iv.f1m = 1.0 + s1m.value;
    iv.f1md = -kI * lambda * iv.f1m + s1m.slope;
    iv.f2p = 1.0 + s2p.value;
    iv.f2pd = -kI * lambda * beta * iv.f2p + s2p.slope;
    iv.f2m = 1.0 + s2m.value;
    iv.f2md = kI * lambda * beta * iv.f2m + s2m.slope;
    return iv;
}

}  // namespace

cd c12_value(const SolutionContext& ctx, cd lambda) {
    if (std::abs(lambda) < 1e-10)
        throw DegenerateBasis("c12_value: lambda too close to 0");
    const double beta = ctx.medium.beta;
    const SumPair s1p = row_accumulate(ctx, [&](int n) { return double(n) + 2.0 * lambda; });
    const SumPair s2p =
        row_accumulate(ctx, [&](int n) { return double(n) - 2.0 * lambda * beta; });
    const cd f1p = 1.0 + s1p.value;
    const cd f1pd = kI * lambda * f1p + s1p.slope;
    const cd f2p = 1.0 + s2p.value;
    const cd f2pd = -kI * lambda * beta * f2p + s2p.slope;
    return wronskian(f1p, f1pd, f2p, f2pd) / (2.0 * kI * lambda);
}

cd c12_derivative_fd(const SolutionContext& ctx, cd lambda, double step) {
    const cd h(step, 0.0);
    return (-c12_value(ctx, lambda + 2.0 * h) + 8.0 * c12_value(ctx, lambda + h) -
            8.0 * c12_value(ctx, lambda - h) + c12_value(ctx, lambda - 2.0 * h)) /
           (12.0 * h);
}

ScatteringCoeffs scattering_coeffs(const SolutionContext& ctx, cd lambda) {
    if (std::abs(lambda) < 1e-10)
        throw DegenerateBasis("scattering_coeffs: lambda too close to 0");
    const double beta = ctx.medium.beta;
    const InterfaceValues iv = interface_values(ctx, lambda);

    ScatteringCoeffs out;
    out.lambda = lambda;
    out.c12 = wronskian(iv.f1p, iv.f1pd, iv.f2p, iv.f2pd) / (2.0 * kI * lambda);
    out.c11 = wronskian(iv.f2p, iv.f2pd, iv.f1m, iv.f1md) / (2.0 * kI * lambda);
    out.c21 = -out.c12 / beta;
    // c22(lambda) = c11(-lambda)/beta; at -lambda the roles of the +-
    // evaluations swap, so it is assembled from the same eight values.
    out.c22 = wronskian(iv.f2m, iv.f2md, iv.f1p, iv.f1pd) / (-2.0 * kI * lambda * beta);

    const cd det = iv.f1p * iv.f1md - iv.f1m * iv.f1pd;
    if (std::abs(det) < kBasisGuard)
        throw DegenerateBasis("scattering_coeffs: interface basis is numerically singular");
    out.combo_a = (iv.f2p * iv.f1md - iv.f1m * iv.f2pd) / det;
    out.combo_b = (iv.f1p * iv.f2pd - iv.f2p * iv.f1pd) / det;
    return out;
}

std::vector<Singularity> spectral_singularities(const MediumProfile& medium, int cutoff) {
    require_valid(medium);
    if (cutoff < 1) throw std::invalid_argument("spectral_singularities: cutoff must be >= 1");
    std::vector<Singularity> out;
    out.reserve(static_cast<size_t>(2 * cutoff));
    for (int n = 1; n <= cutoff; ++n) {
        out.push_back({static_cast<double>(n) / (2.0 * medium.beta),
                       SingularityFamily::over_two_beta, n});
        out.push_back({static_cast<double>(n) / 2.0, SingularityFamily::half, n});
    }
    std::stable_sort(out.begin(), out.end(), [](const Singularity& a, const Singularity& b) {
        if (a.value != b.value) return a.value < b.value;
        // coincident abscissae keep both entries, n/(2 beta) first
        return static_cast<int>(a.family) < static_cast<int>(b.family);
    });
    return out;
}

Rect default_search_region(const Potential& q, int A) {
    const double re = 0.5 * (A + 2);
    return Rect{-re, re, kMinImag, 10.0 * (1.0 + q.max_abs())};
}

namespace {

// Phase accumulation along one boundary segment, bisected until successive
// increments stay below pi/2.
void walk_segment(const SolutionContext& ctx, cd z0, cd z1, cd c0, cd c1, int depth,
                  double& total) {
    const double dphi = std::arg(c1 / c0);
    if (std::abs(dphi) < 1.4) {
        total += dphi;
        return;
    }
    if (depth <= 0)
        throw ContourThroughZero("winding: phase step would not settle (zero on the contour?)");
    const cd zm = 0.5 * (z0 + z1);
    const cd cm = c12_value(ctx, zm);
    if (std::abs(cm) < 1e-13)
        throw ContourThroughZero("winding: boundary sample of C12 is numerically zero");
    walk_segment(ctx, z0, zm, c0, cm, depth - 1, total);
    walk_segment(ctx, zm, z1, cm, c1, depth - 1, total);
}

int winding_number(const SolutionContext& ctx, const Rect& r) {
    // counterclockwise corner loop, each edge pre-split into 16 segments
    const cd corners[4] = {cd(r.re0, r.im0), cd(r.re1, r.im0), cd(r.re1, r.im1),
                           cd(r.re0, r.im1)};
    std::vector<cd> pts;
    constexpr int kSeed = 16;
    for (int e = 0; e < 4; ++e) {
        const cd a = corners[e];
        const cd b = corners[(e + 1) % 4];
        for (int k = 0; k < kSeed; ++k)
            pts.push_back(a + (b - a) * (static_cast<double>(k) / kSeed));
    }
    pts.push_back(pts.front());

    std::vector<cd> vals(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        vals[i] = c12_value(ctx, pts[i]);
        if (std::abs(vals[i]) < 1e-13)
            throw ContourThroughZero("winding: boundary sample of C12 is numerically zero");
    }
    double total = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        walk_segment(ctx, pts[i], pts[i + 1], vals[i], vals[i + 1], 42, total);

    const double turns = total / (2.0 * M_PI);
    const double nearest = std::round(turns);
    if (std::abs(turns - nearest) > 0.25)
        throw ContourThroughZero("winding: non-integral phase total " + std::to_string(turns));
    return static_cast<int>(nearest);
}

int winding_with_retry(const SolutionContext& ctx, const Rect& r) {
    for (int attempt = 0;; ++attempt) {
        const double d = attempt * 2.7e-6 * (1.0 + std::max(r.width(), r.height()));
        const Rect jittered{r.re0 - d, r.re1 + d, r.im0 - 0.3 * d, r.im1 + d};
        try {
            return winding_number(ctx, jittered);
        } catch (const ContourThroughZero&) {
            if (attempt >= 5) throw;
        }
    }
}

cd newton_refine(const SolutionContext& ctx, cd start, double tol_root) {
    cd z = start;
    for (int it = 0; it < 50; ++it) {
        const cd c = c12_value(ctx, z);
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) break;
        const cd d = c12_derivative_fd(ctx, z, 1e-6 * (1.0 + std::abs(z)));
        if (std::abs(d) < 1e-14) break;
        const cd step = c / d;
        z -= step;
        if (std::abs(step) < 1e-12 * (1.0 + std::abs(z)) &&
            std::abs(c12_value(ctx, z)) < tol_root)
            return z;
    }
    if (std::abs(c12_value(ctx, z)) < tol_root) return z;
    throw NonConvergence("find_eigenvalues: Newton refinement failed near " +
                         std::to_string(start.real()) + "+" + std::to_string(start.imag()) +
                         "i");
}

void subdivide(const SolutionContext& ctx, const Rect& cell, double tol_root,
               SpectrumReport& report, std::vector<cd>& zeros) {
    const int w = winding_with_retry(ctx, cell);
    report.counts.push_back({cell, w});
    if (w == 0) return;

    if (std::max(cell.width(), cell.height()) <= 0.05) {
        // starts: center plus quarter offsets, in case Newton from the center
        // hops to a sibling's zero
        const cd c(0.5 * (cell.re0 + cell.re1), 0.5 * (cell.im0 + cell.im1));
        const double dx = 0.25 * cell.width(), dy = 0.25 * cell.height();
        const cd starts[5] = {c, c + cd(dx, dy), c - cd(dx, dy), c + cd(dx, -dy),
                              c + cd(-dx, dy)};
        int found = 0;
        std::string last_error;
        for (const cd& s : starts) {
            try {
                const cd z = newton_refine(ctx, s, tol_root);
                bool fresh = true;
                for (const cd& seen : zeros)
                    if (std::abs(z - seen) < 1e-7) fresh = false;
                if (fresh) {
                    zeros.push_back(z);
                    ++found;
                }
            } catch (const SpectralError& err) {
                last_error = err.what();
            }
            if (found >= w) break;
        }
        if (found == 0)
            throw NonConvergence("find_eigenvalues: cell with winding " + std::to_string(w) +
                                 " yielded no refined zero (" + last_error + ")");
        return;
    }

    const double rm = 0.5 * (cell.re0 + cell.re1);
    const double im = 0.5 * (cell.im0 + cell.im1);
    subdivide(ctx, {cell.re0, rm, cell.im0, im}, tol_root, report, zeros);
    subdivide(ctx, {rm, cell.re1, cell.im0, im}, tol_root, report, zeros);
    subdivide(ctx, {cell.re0, rm, im, cell.im1}, tol_root, report, zeros);
    subdivide(ctx, {rm, cell.re1, im, cell.im1}, tol_root, report, zeros);
}

}  // namespace

SpectrumReport find_eigenvalues(const SolutionContext& ctx, Rect region, double tol_root) {
    if (region.im0 < kMinImag)
        throw std::invalid_argument("find_eigenvalues: region must stay above Im lambda = 1e-3");
    if (region.re1 <= region.re0 || region.im1 <= region.im0)
        throw std::invalid_argument("find_eigenvalues: empty region");

    SpectrumReport report;
    report.region = region;
    report.A = ctx.vtable.A;
    report.tail = tail_norm(ctx.vtable);

    std::vector<cd> zeros;
    subdivide(ctx, region, tol_root, report, zeros);

    std::sort(zeros.begin(), zeros.end(), [](cd a, cd b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    for (const cd& z : zeros) {
        if (!region.contains(z, 1e-6)) continue;
        if (std::abs(z.real()) < 1e-9 || z.imag() <= 0.0) continue;  // not an eigenvalue
        const cd deriv = c12_derivative_fd(ctx, z, 1e-6 * (1.0 + std::abs(z)));
        if (std::abs(deriv) <= 1e-8)
            throw NonConvergence("find_eigenvalues: refined zero is not simple");
        report.eigenvalues.push_back({z, std::abs(c12_value(ctx, z)), deriv});
    }
    return report;
}

cd resolvent_kernel(const SolutionContext& ctx, const ResolventQuery& query) {
    cd lambda = query.lambda;
    if (query.sector == Sector::upper) {
        if (!(lambda.imag() > 0.0))
            throw std::invalid_argument("resolvent_kernel: upper-sector query needs Im lambda > 0");
    } else {
        if (!(lambda.imag() < 0.0))
            throw std::invalid_argument("resolvent_kernel: lower-sector query needs Im lambda < 0");
        // the lower-sector kernel is the upper formula taken at -lambda
        lambda = -lambda;
    }

    const InterfaceValues iv = interface_values(ctx, lambda);
    const cd W = wronskian(iv.f1p, iv.f1pd, iv.f2p, iv.f2pd);
    if (std::abs(W) < 1e-10)
        throw NearPole("resolvent_kernel: W[f1+, f2+](0) is numerically zero");

    const double hi = std::max(query.x, query.t);
    const double lo = std::min(query.x, query.t);
    cd fa, fb;
    if (hi >= 0.0) {
        fa = eval_f1(ctx, hi, lambda, Sign::plus, 0);
    } else {
        const ScatteringCoeffs coeffs = scattering_coeffs(ctx, lambda);
        fa = extend_solution(ctx, coeffs, Extension::f1_left, hi, lambda, 0);
    }
    if (lo < 0.0) {
        fb = eval_f2(ctx, lo, lambda, Sign::plus, 0);
    } else {
        const ScatteringCoeffs coeffs = scattering_coeffs(ctx, lambda);
        fb = extend_solution(ctx, coeffs, Extension::f2_right, lo, lambda, 0);
    }
    return fa * fb / W;
}

DerivativeCheck c12_derivative_check(const SolutionContext& ctx, cd zeta) {
    if (!(zeta.imag() > 0.0))
        throw std::invalid_argument("c12_derivative_check: eigenvalue must have Im > 0");
    if (std::abs(c12_value(ctx, zeta)) >= 1e-8)
        throw std::invalid_argument("c12_derivative_check: C12 does not vanish at the point");

    DerivativeCheck out;
    out.lhs = c12_derivative_fd(ctx, zeta, 1e-5 * (1.0 + std::abs(zeta)));

    const double beta = ctx.medium.beta;
    out.X = std::log(1e10) / (zeta.imag() * std::min(1.0, beta));

    const ScatteringCoeffs coeffs = scattering_coeffs(ctx, zeta);
    // f1 continued to x < 0, solved once (extend_solution would redo the 2x2
    // per quadrature point)
    const InterfaceValues iv = interface_values(ctx, zeta);
    const cd det2 = iv.f2p * iv.f2md - iv.f2m * iv.f2pd;
    if (std::abs(det2) < kBasisGuard)
        throw DegenerateBasis("c12_derivative_check: interface basis is numerically singular");
    const cd a1 = (iv.f1p * iv.f2md - iv.f2m * iv.f1pd) / det2;
    const cd b1 = (iv.f2p * iv.f1pd - iv.f1p * iv.f2pd) / det2;

    const auto integrand = [&](double x) -> cd {
        if (x >= 0.0) {
            const cd f2e = coeffs.combo_a * eval_f1(ctx, x, zeta, Sign::plus, 0) +
                           coeffs.combo_b * eval_f1(ctx, x, zeta, Sign::minus, 0);
            return eval_f1(ctx, x, zeta, Sign::plus, 0) * f2e;
        }
        const cd f1e = a1 * eval_f2(ctx, x, zeta, Sign::plus, 0) +
                       b1 * eval_f2(ctx, x, zeta, Sign::minus, 0);
        return f1e * eval_f2(ctx, x, zeta, Sign::plus, 0) * beta * beta;
    };

    const QuadratureResult left = integrate(integrand, -out.X, 0.0, 5e-10);
    const QuadratureResult right = integrate(integrand, 0.0, out.X, 5e-10);
    const cd I = left.value + right.value;

    double peak = 0.0;
    for (int k = 0; k <= 32; ++k)
        peak = std::max(peak, std::abs(integrand(-out.X + (2.0 * out.X * k) / 32.0)));
    out.boundary_ratio =
        std::max(std::abs(integrand(-out.X)), std::abs(integrand(out.X))) / peak;

    // sign fixed by the W[f,g] = f g' - f' g convention
    out.rhs = kI * I;
    return out;
}

ResidueProbe residue_at_singularity(const SolutionContext& ctx, int n, double x, double t) {
    if (n < 1 || n > ctx.vtable.A)
        throw std::invalid_argument("residue_at_singularity: index outside the table");

    const double half_n = 0.5 * n;
    cd v[3];
    const double deltas[3] = {1e-2, 5e-3, 2.5e-3};
    for (int k = 0; k < 3; ++k) {
        const cd lambda(half_n, deltas[k]);
        const ResolventQuery query{x, t, lambda, Sector::upper};
        v[k] = (static_cast<double>(n) - 2.0 * lambda) * resolvent_kernel(ctx, query);
    }
    const cd l1a = 2.0 * v[1] - v[0];
    const cd l1b = 2.0 * v[2] - v[1];

    ResidueProbe out;
    out.limit_estimate = (4.0 * l1b - l1a) / 3.0;
    const cd f1x = eval_f1(ctx, x, cd(half_n, 0.0), Sign::plus, 0);
    const cd f1t = eval_f1(ctx, t, cd(half_n, 0.0), Sign::plus, 0);
    out.formula = 2.0 / (kI * static_cast<double>(n)) * ctx.vtable.get(n, n) * f1x * f1t;
    return out;
}

}  // namespace specwave
