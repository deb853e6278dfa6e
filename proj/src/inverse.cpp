// SPDX-License-Identifier: Apache-2.0
#include "specwave/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specwave/solutions.hpp"
#include "specwave/spectral.hpp"

namespace specwave {

namespace {

const cd kI(0.0, 1.0);

// Value at u = 0 of the quadratic through (u_k, c_k), k = 0..2.
cd extrapolate_to_zero(const double u[3], const cd c[3]) {
    cd out(0.0, 0.0);
    for (int i = 0; i < 3; ++i) {
        double L = 1.0;
        for (int j = 0; j < 3; ++j)
            if (i != j) L *= (0.0 - u[j]) / (u[i] - u[j]);
        out += c[i] * L;
    }
    return out;
}

double beta_from_limit(cd limit) { return -2.0 * limit.real() - 1.0; }

}  // namespace

void require_valid(const SpectralData& data) {
    if (data.normalizing_numbers.empty())
        throw std::invalid_argument("spectral data: normalizing numbers must be present");
    const bool has_asym = data.asymptote.has_value();
    const bool has_samples = !data.samples.empty();
    if (has_asym == has_samples)
        throw std::invalid_argument(
            "spectral data: exactly one of asymptote / samples must be present");
    if (has_samples) {
        if (data.samples.size() < 3)
            throw std::invalid_argument("spectral data: at least 3 samples required");
        double prev = 0.0;
        for (const C12Sample& s : data.samples) {
            if (!(s.t > prev))
                throw std::invalid_argument(
                    "spectral data: sample points must be positive and strictly increasing");
            prev = s.t;
        }
    }
}

BetaRecovery recover_beta_full(const SpectralData& data) {
    require_valid(data);
    BetaRecovery out;

    if (data.asymptote) {
        const cd a = *data.asymptote;
        if (std::abs(a.imag()) >= 1e-8)
            throw NonRealAsymptote("recover_beta: asymptote has imaginary part " +
                                   std::to_string(a.imag()));
        out.beta = beta_from_limit(a);
        out.imag_drift = std::abs(a.imag());
        if (out.beta <= 0.0)
            throw NonPositiveBeta("recover_beta: asymptote gives beta = " +
                                  std::to_string(out.beta));
        return out;
    }

    const size_t m = data.samples.size();
    double u[3];
    double tpts[3];
    cd raw[3];
    for (int k = 0; k < 3; ++k) {
        const C12Sample& s = data.samples[m - 3 + static_cast<size_t>(k)];
        tpts[k] = s.t;
        u[k] = 1.0 / s.t;
        raw[k] = s.value;
    }

    cd limit = extrapolate_to_zero(u, raw);
    double beta = beta_from_limit(limit);

    // The raw extrapolation carries an O(1/t) model transient. Rebuild it
    // from the table the normalizing numbers define and subtract; two or
    // three sweeps take the estimate to rounding level.
    const VTable reconstructed =
        reconstruct_vtable(data.normalizing_numbers, data.A());
    cd corrected[3] = {raw[0], raw[1], raw[2]};
    for (int sweep = 0; sweep < 3; ++sweep) {
        if (beta <= 0.0)
            throw NonPositiveBeta("recover_beta: extrapolated beta = " + std::to_string(beta));
        const SolutionContext model(reconstructed, MediumProfile{beta});
        const cd model_limit(-0.5 * (beta + 1.0), 0.0);
        for (int k = 0; k < 3; ++k)
            corrected[k] = raw[k] - (c12_value(model, kI * tpts[k]) - model_limit);
        limit = extrapolate_to_zero(u, corrected);
        beta = beta_from_limit(limit);
    }

    out.beta = beta;
    out.imag_drift = std::abs(limit.imag());
    for (int k = 0; k < 3; ++k)
        out.extrapolation_residual =
            std::max(out.extrapolation_residual, std::abs(corrected[k] - limit));
    if (out.beta <= 0.0)
        throw NonPositiveBeta("recover_beta: samples give beta = " + std::to_string(out.beta));
    return out;
}

InverseResult solve_inverse(const SpectralData& data) {
    require_valid(data);
    InverseResult out;
    out.vtable = reconstruct_vtable(data.normalizing_numbers, data.A());
    out.potential = q_from_vtable(out.vtable);

    // trim the rounding-level tail so exact inputs come back in their
    // original length; interior zeros stay (harmonics may be sparse)
    const double floor = 1e-13 * std::max(1.0, out.potential.max_abs());
    int keep = out.potential.order();
    while (keep > 0 && std::abs(out.potential.coeff(keep)) <= floor) --keep;
    out.potential.harmonics.resize(static_cast<size_t>(keep));

    const BetaRecovery recovery = recover_beta_full(data);
    out.beta = recovery.beta;

    const TailNorm tail = tail_norm(out.vtable);
    out.diagnostics["extrapolation_residual"] = recovery.extrapolation_residual;
    out.diagnostics["imag_drift"] = recovery.imag_drift;
    out.diagnostics["tail_norm_total"] = tail.total;
    out.diagnostics["tail_norm_last_column"] = tail.last_column;
    return out;
}

RoundTripReport round_trip(const Potential& q, const MediumProfile& medium, int A) {
    require_valid(medium);
    const VTable forward = build_vtable(q, A);
    const SolutionContext ctx(forward, medium);

    SpectralData data;
    data.normalizing_numbers = diagonal(forward);
    for (double t : {50.0, 100.0, 200.0})
        data.samples.push_back({t, c12_value(ctx, kI * t)});

    const InverseResult inv = solve_inverse(data);

    RoundTripReport report;
    report.A = A;
    report.beta_in = medium.beta;
    report.beta_out = inv.beta;
    report.beta_abs_err = std::abs(inv.beta - medium.beta);
    for (int n = 1; n <= std::max(A, q.order()); ++n) {
        const cd want = q.coeff(n);
        const cd got = inv.potential.coeff(n);
        const double scale = std::abs(want) > 1e-9 ? std::abs(want) : 1.0;
        report.q_max_rel_err = std::max(report.q_max_rel_err, std::abs(got - want) / scale);
    }
    for (int alpha = 1; alpha <= A; ++alpha) {
        for (int n = 1; n <= alpha; ++n) {
            const cd want = forward.get(n, alpha);
            const double err =
                std::abs(inv.vtable.get(n, alpha) - want) / std::max(std::abs(want), 1.0);
            report.vtable_max_err = std::max(report.vtable_max_err, err);
        }
    }
    return report;
}

}  // namespace specwave
