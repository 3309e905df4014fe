// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "micromag/energies.hpp"
#include "micromag/fields.hpp"

namespace micromag {

enum class StepRule { bb_backtracking, fixed };

struct MinimizeOptions {
    int max_iters = 2000;
    double grad_tol = 1e-8; // sup-norm of the projected gradient
    StepRule step_rule = StepRule::bb_backtracking;
    double fixed_step = 1e-2;
    bool init_constant = true; // constant e3 start
    bool init_vortex = true;
    int random_restarts = 3;
    std::uint64_t seed = 1;
    bool record_trace = false;
};

struct IterRecord {
    int iter = 0;
    double energy = 0.0;
    double grad_norm = 0.0; // sup-norm of the projected gradient
};

struct MinimizeResult {
    Magnetization minimizer;
    EnergyBreakdown energy;
    int iterations = 0;
    bool converged = false;
    std::string init_kind;
    std::vector<IterRecord> trace;
    /// Energies of every starting field, for the descent invariant.
    std::vector<std::pair<std::string, double>> init_energies;
};

/// Euclidean gradient of the discrete total energy (first variation of the
/// pair sums); see EnergyContext::gradient.
std::vector<Vec3> energy_gradient(const BallMesh& mesh, const EnergyModel& model,
                                  const Magnetization& m);

/// Tangent projection g_i - (g_i . m_i) m_i, cell by cell.
std::vector<Vec3> project_tangent(const Magnetization& m, const std::vector<Vec3>& g);

/// normalize(m_i + t v_i) per cell. Throws when a cell lands on the origin
/// (the optimizer treats that as a rejected step and halves t instead).
Magnetization retract(const Magnetization& m, const std::vector<Vec3>& v, double t);

/// Projected gradient descent with Barzilai-Borwein steps and Armijo
/// backtracking (factor 0.5, c = 1e-4); the BB memory resets after any
/// rejected trial step. Descent is monotone along accepted steps.
MinimizeResult minimize_from(const EnergyContext& ctx, Magnetization init, std::string init_kind,
                             const MinimizeOptions& opts);

/// Best result over the restart set {constant e3, vortex, random seeds};
/// deterministic given the seed, with ties broken by init order.
MinimizeResult minimize(const BallMesh& mesh, const EnergyModel& model,
                        const MinimizeOptions& opts);

} // namespace micromag
