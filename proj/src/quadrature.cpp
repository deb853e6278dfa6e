// SPDX-License-Identifier: Apache-2.0
#include "specwave/quadrature.hpp"

#include <cmath>

namespace specwave {

namespace {

// QUADPACK dqk15 abscissae/weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    cd gk;
    double err;
};

Panel gk15(const std::function<cd(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    cd fv[15];
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(c - h * kXgk[j]);
        fv[14 - j] = f(c + h * kXgk[j]);
    }
    fv[7] = f(c);
    cd gk(0.0, 0.0), g(0.0, 0.0);
    for (int j = 0; j < 7; ++j) gk += kWgk[j] * (fv[j] + fv[14 - j]);
    gk += kWgk[7] * fv[7];
    for (int j = 0; j < 3; ++j) g += kWg[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);
    g += kWg[3] * fv[7];
    return Panel{gk * h, std::abs((gk - g) * h)};
}

void refine(const std::function<cd(double)>& f, double a, double b, double tol,
            int depth, QuadratureResult& out) {
    const Panel p = gk15(f, a, b);
    out.evaluations += 15;
    if (p.err <= tol || depth <= 0) {
        out.value += p.gk;
        out.error_estimate += p.err;
        return;
    }
    const double m = 0.5 * (a + b);
    refine(f, a, m, 0.5 * tol, depth - 1, out);
    refine(f, m, b, 0.5 * tol, depth - 1, out);
}

}  // namespace

QuadratureResult integrate(const std::function<cd(double)>& f, double a, double b,
                           double abs_tol, int max_depth) {
    QuadratureResult out{cd(0.0, 0.0), 0.0, 0};
    if (a == b) return out;
    refine(f, a, b, abs_tol, max_depth, out);
    return out;
}

}  // namespace specwave
