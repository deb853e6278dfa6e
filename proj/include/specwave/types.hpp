// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace specwave {

using cd = std::complex<double>;

// Error taxonomy. Everything numerical derives from SpectralError so the CLI
// can map the whole family to one exit code.
struct SpectralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A series denominator n +- 2*lambda (or n -+ 2*lambda*beta) vanished.
struct PoleAtLambda : SpectralError {
    using SpectralError::SpectralError;
};

// The interface 2x2 basis is numerically singular (lambda too close to 0).
struct DegenerateBasis : SpectralError {
    using SpectralError::SpectralError;
};

// Resolvent denominator W[f1+, f2+](0) too small.
struct NearPole : SpectralError {
    using SpectralError::SpectralError;
};

// Asymptotic value of C12 on the imaginary axis had a non-negligible
// imaginary part; cannot be -(beta+1)/2 for real beta.
struct NonRealAsymptote : SpectralError {
    using SpectralError::SpectralError;
};

// Recovered beta was <= 0.
struct NonPositiveBeta : SpectralError {
    using SpectralError::SpectralError;
};

// Newton refinement failed to converge.
struct NonConvergence : SpectralError {
    using SpectralError::SpectralError;
};

// A contour sample of C12 was (numerically) zero; the boundary must be
// jittered before the winding number is trustworthy.
struct ContourThroughZero : SpectralError {
    using SpectralError::SpectralError;
};

// q(x) = sum_{n>=1} q_n e^{inx}, finitely many harmonics.
struct Potential {
    std::vector<cd> harmonics;  // harmonics[k] multiplies e^{i(k+1)x}

    int order() const { return static_cast<int>(harmonics.size()); }

    // q_n with 1-based n; zero outside the stored range.
    cd coeff(int n) const {
        if (n < 1 || n > order()) return cd(0.0, 0.0);
        return harmonics[static_cast<size_t>(n - 1)];
    }

    double max_abs() const {
        double m = 0.0;
        for (const cd& q : harmonics) m = std::max(m, std::abs(q));
        return m;
    }
};

// Piecewise constant weight: beta^2 left of the interface at x = 0, 1 right
// of it. beta > 0; beta == 1 means no jump and is only warned about.
struct MediumProfile {
    double beta = 2.0;

    double density(double x) const { return x < 0.0 ? beta * beta : 1.0; }
};

inline void require_valid(const MediumProfile& m) {
    if (!(m.beta > 0.0))
        throw std::invalid_argument("medium: beta must be positive");
}

}  // namespace specwave
