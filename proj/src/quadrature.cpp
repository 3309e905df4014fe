// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#include "micromag/quadrature.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace micromag {

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-like initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        gl.weights[i] = w;
        gl.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) gl.nodes[n / 2] = 0.0;
    return gl;
}

namespace {

// G7/K15 abscissae and weights (positive half; symmetric).
constexpr double kKronrodX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEval {
    double kronrod;
    double err;
};

PanelEval eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kKronrodX[i]);
        fv[14 - i] = f(c + h * kKronrodX[i]);
    }
    fv[7] = f(c);
    double kr = 0.0;
    for (int i = 0; i < 7; ++i) kr += kKronrodW[i] * (fv[i] + fv[14 - i]);
    kr += kKronrodW[7] * fv[7];
    kr *= h;
    // Embedded 7-point Gauss uses the odd-index Kronrod nodes.
    double g = kGaussW[3] * fv[7];
    g += kGaussW[0] * (fv[1] + fv[13]);
    g += kGaussW[1] * (fv[3] + fv[11]);
    g += kGaussW[2] * (fv[5] + fv[9]);
    g *= h;
    return {kr, std::abs(kr - g)};
}

struct Panel {
    double a, b, value, err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

} // namespace

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, int max_panels, double abs_tol) {
    std::priority_queue<Panel> queue;
    const PanelEval first = eval_panel(f, a, b);
    queue.push({a, b, first.kronrod, first.err});
    double total = first.kronrod;
    double total_err = first.err;
    int panels = 1;
    const double floor_scale = 1e-300;
    while (panels < max_panels && std::isfinite(total) &&
           total_err > std::max(rel_tol * std::max(std::abs(total), floor_scale), abs_tol)) {
        const Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const PanelEval left = eval_panel(f, worst.a, mid);
        const PanelEval right = eval_panel(f, mid, worst.b);
        total += left.kronrod + right.kronrod - worst.value;
        total_err += left.err + right.err - worst.err;
        queue.push({worst.a, mid, left.kronrod, left.err});
        queue.push({mid, worst.b, right.kronrod, right.err});
        ++panels;
    }
    return {total, total_err, panels};
}

} // namespace micromag
