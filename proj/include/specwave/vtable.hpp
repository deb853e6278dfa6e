// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "specwave/types.hpp"

namespace specwave {

// Triangular coefficient table V_{n,alpha}, 1 <= n <= alpha <= A, stored
// column-packed. Entries outside the triangle read as zero.
struct VTable {
    int A = 0;
    std::vector<cd> entries;  // column alpha occupies alpha slots

    VTable() = default;
    explicit VTable(int trunc)
        : A(trunc),
          entries(static_cast<size_t>(trunc) * (trunc + 1) / 2, cd(0.0, 0.0)) {}

    static size_t index(int n, int alpha) {
        return static_cast<size_t>(alpha - 1) * alpha / 2 + static_cast<size_t>(n - 1);
    }

    cd get(int n, int alpha) const {
        if (n < 1 || alpha < n || alpha > A) return cd(0.0, 0.0);
        return entries[index(n, alpha)];
    }

    cd& at(int n, int alpha) { return entries[index(n, alpha)]; }
};

// Column-by-column recurrence. For each column alpha:
//   V_{n,alpha} = -(1/(alpha(alpha-n))) sum_{s=n}^{alpha-1} q_{alpha-s} V_{n,s}   (n < alpha)
//   V_{alpha,alpha} = -q_alpha/alpha - sum_{n<alpha} V_{n,alpha}
VTable build_vtable(const Potential& q, int A);

struct TailNorm {
    double total = 0.0;        // sum_n (1/n) sum_alpha alpha |V_{n,alpha}|
    double last_column = 0.0;  // sum_n (1/n) A |V_{n,A}|, truncation diagnostic
};

TailNorm tail_norm(const VTable& v);

// Fill the off-diagonals from the diagonal alone:
//   V_{n,alpha+n} = V_{n,n} sum_{m=1}^{alpha} V_{m,alpha} / (m+n)
// processing target columns in ascending order.
VTable reconstruct_vtable(const std::vector<cd>& diag, int A);

// q_alpha = -alpha sum_{n=1}^{alpha} V_{n,alpha}
Potential q_from_vtable(const VTable& v);

std::vector<cd> diagonal(const VTable& v);

}  // namespace specwave
