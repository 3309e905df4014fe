// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

namespace micromag {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule, nodes by Newton iteration on P_n.
GaussLegendre gauss_legendre(int n);

struct AdaptiveResult {
    double value = 0.0;
    double error_estimate = 0.0; // accumulated Kronrod-Gauss deltas
    int panels = 0;
};

/// Adaptive Gauss-Kronrod (G7/K15) on [a, b] with panel bisection until the
/// accumulated error estimate meets max(rel_tol * |total|, abs_tol).
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol = 1e-12, int max_panels = 20000,
                                  double abs_tol = 0.0);

} // namespace micromag
