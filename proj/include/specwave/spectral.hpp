// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "specwave/solutions.hpp"
#include "specwave/types.hpp"

namespace specwave {

// Interface matching data at one lambda. c12 and c11 follow the fixed
// Wronskian convention; combo_a/combo_b are the raw coefficients of
// f2(+) = combo_a f1(+) + combo_b f1(-) on x >= 0 from the 2x2 solve
// (value and derivative continuity at x = 0), which is convention free.
struct ScatteringCoeffs {
    cd lambda;
    cd c11, c12, c21, c22;
    cd combo_a, combo_b;
};

// c12 = W[f1+(0), f2+(0)] / (2 i lambda),  c11 = W[f2+(0), f1-(0)] / (2 i lambda),
// c21 = -c12 / beta,  c22 = c11 evaluated at -lambda, divided by beta.
ScatteringCoeffs scattering_coeffs(const SolutionContext& ctx, cd lambda);

// Just c12, on the fast x = 0 path. Workhorse of the eigenvalue search.
cd c12_value(const SolutionContext& ctx, cd lambda);

// 4th-order central difference stencil for dC12/dlambda.
cd c12_derivative_fd(const SolutionContext& ctx, cd lambda, double step);

struct Rect {
    double re0 = 0.0, re1 = 0.0, im0 = 0.0, im1 = 0.0;

    double width() const { return re1 - re0; }
    double height() const { return im1 - im0; }
    bool contains(cd z, double slack = 0.0) const {
        return z.real() >= re0 - slack && z.real() <= re1 + slack &&
               z.imag() >= im0 - slack && z.imag() <= im1 + slack;
    }
};

enum class SingularityFamily {
    over_two_beta,  // n / (2 beta)
    half,           // n / 2
};

struct Singularity {
    double value = 0.0;
    SingularityFamily family = SingularityFamily::half;
    int n = 0;
};

// Sorted merge of { n/(2 beta) : n <= cutoff } and { n/2 : n <= cutoff },
// always 2*cutoff entries; at coincident abscissae the n/(2 beta) entry
// comes first.
std::vector<Singularity> spectral_singularities(const MediumProfile& medium, int cutoff);

struct Eigenvalue {
    cd lambda;
    double c12_abs = 0.0;  // |C12| after refinement
    cd derivative;         // dC12/dlambda at the zero
};

struct CellCount {
    Rect cell;
    int winding = 0;
};

struct SpectrumReport {
    Rect region;
    std::vector<Eigenvalue> eigenvalues;
    std::vector<Singularity> singularities;  // filled by the caller (needs a cutoff)
    std::vector<CellCount> counts;           // winding per visited cell, root first
    int A = 0;
    TailNorm tail;
};

// Argument-principle search: winding numbers over adaptively subdivided
// rectangles (boundary sampled until successive phase increments stay below
// pi/2), then Newton refinement to |C12| < tol_root. The region must satisfy
// im0 >= 1e-3. Zeros in the lower sector are the negatives of these.
SpectrumReport find_eigenvalues(const SolutionContext& ctx, Rect region,
                                double tol_root = 1e-10);

Rect default_search_region(const Potential& q, int A);

enum class Sector {
    upper,  // 0 < arg lambda < pi
    lower,  // pi < arg lambda < 2 pi
};

struct ResolventQuery {
    double x = 0.0;
    double t = 0.0;
    cd lambda;
    Sector sector = Sector::upper;
};

// Kernel of the resolvent on the (1,1) component:
//   upper sector: f1+(max(x,t)) f2+(min(x,t)) / W[f1+, f2+](0)
//   lower sector: the same built from f1-, f2- (equivalently, the upper
//   formula at -lambda).
// Off-half-line factors are continued with extend_solution.
cd resolvent_kernel(const SolutionContext& ctx, const ResolventQuery& query);

struct DerivativeCheck {
    cd lhs;           // finite-difference dC12/dlambda at the eigenvalue
    cd rhs;           // i * integral of rho f1+ f2+ over [-X, X]
    double X = 0.0;   // half-width used for the integral
    double boundary_ratio = 0.0;  // |integrand(+-X)| / max sampled |integrand|
};

// Checks the derivative identity at an eigenvalue zeta of C12 (|C12| < 1e-8
// required, Im zeta > 0). The sign of the integral side follows the fixed
// convention W[f,g] = f g' - f' g. X is chosen so the integrand has decayed
// below 1e-10 of its e^{...}-free scale at the endpoints.
DerivativeCheck c12_derivative_check(const SolutionContext& ctx, cd zeta);

struct ResidueProbe {
    cd limit_estimate;  // Richardson-extrapolated (n - 2 lambda) R11 along lambda = n/2 + i delta
    cd formula;         // (2/(i n)) V_{n,n} f1+(x, n/2) f1+(t, n/2)
};

ResidueProbe residue_at_singularity(const SolutionContext& ctx, int n, double x, double t);

}  // namespace specwave
