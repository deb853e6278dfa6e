// SPDX-License-Identifier: Apache-2.0
#include "specwave/vtable.hpp"

#include <cmath>
#include <stdexcept>

namespace specwave {

VTable build_vtable(const Potential& q, int A) {
    if (A <= 0) throw std::invalid_argument("build_vtable: truncation must be positive");
    VTable v(A);
    for (int alpha = 1; alpha <= A; ++alpha) {
        for (int n = 1; n < alpha; ++n) {
            cd acc(0.0, 0.0);
            for (int s = n; s < alpha; ++s) acc += q.coeff(alpha - s) * v.at(n, s);
            v.at(n, alpha) = -acc / (static_cast<double>(alpha) * (alpha - n));
        }
        cd diag = -q.coeff(alpha) / static_cast<double>(alpha);
        for (int n = 1; n < alpha; ++n) diag -= v.at(n, alpha);
        v.at(alpha, alpha) = diag;
    }
    return v;
}

TailNorm tail_norm(const VTable& v) {
    TailNorm out;
    for (int n = 1; n <= v.A; ++n) {
        const double inv_n = 1.0 / n;
        for (int alpha = n; alpha <= v.A; ++alpha)
            out.total += inv_n * alpha * std::abs(v.get(n, alpha));
        out.last_column += inv_n * v.A * std::abs(v.get(n, v.A));
    }
    return out;
}

VTable reconstruct_vtable(const std::vector<cd>& diag, int A) {
    if (A <= 0) throw std::invalid_argument("reconstruct_vtable: truncation must be positive");
    if (static_cast<int>(diag.size()) != A)
        throw std::invalid_argument("reconstruct_vtable: diagonal length must equal the truncation");
    VTable v(A);
    for (int n = 1; n <= A; ++n) v.at(n, n) = diag[static_cast<size_t>(n - 1)];
    // Entry (n, c) needs only column c - n, so ascending target columns see
    // fully built sources.
    for (int c = 2; c <= A; ++c) {
        for (int n = 1; n < c; ++n) {
            const int alpha = c - n;  // source column
            cd acc(0.0, 0.0);
            for (int m = 1; m <= alpha; ++m) acc += v.at(m, alpha) / static_cast<double>(m + n);
            v.at(n, c) = v.at(n, n) * acc;
        }
    }
    return v;
}

Potential q_from_vtable(const VTable& v) {
    Potential q;
    q.harmonics.resize(static_cast<size_t>(v.A));
    for (int alpha = 1; alpha <= v.A; ++alpha) {
        cd col(0.0, 0.0);
        for (int n = 1; n <= alpha; ++n) col += v.get(n, alpha);
        q.harmonics[static_cast<size_t>(alpha - 1)] = -static_cast<double>(alpha) * col;
    }
    return q;
}

std::vector<cd> diagonal(const VTable& v) {
    std::vector<cd> d(static_cast<size_t>(v.A));
    for (int n = 1; n <= v.A; ++n) d[static_cast<size_t>(n - 1)] = v.get(n, n);
    return d;
}

}  // namespace specwave
