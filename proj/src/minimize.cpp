// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#include "micromag/minimize.hpp"

#include <algorithm>
#include <cmath>

#include "micromag/errors.hpp"

namespace micromag {

std::vector<Vec3> energy_gradient(const BallMesh& mesh, const EnergyModel& model,
                                  const Magnetization& m) {
    return EnergyContext(mesh, model).gradient(m);
}

std::vector<Vec3> project_tangent(const Magnetization& m, const std::vector<Vec3>& g) {
    if (g.size() != m.size()) throw InvalidArgument("project_tangent: size mismatch");
    std::vector<Vec3> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec3 mi = m.get(i);
        out[i] = g[i] - mi * g[i].dot(mi);
    }
    return out;
}

Magnetization retract(const Magnetization& m, const std::vector<Vec3>& v, double t) {
    if (v.size() != m.size()) throw InvalidArgument("retract: size mismatch");
    Magnetization out = m;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Vec3 p = m.get(i) + v[i] * t;
        const double n = p.norm();
        if (n < 1e-14) throw InvalidArgument("retract: step maps a cell to the origin");
        out.set(i, p / n);
    }
    return out;
}

namespace {

double sup_norm(const std::vector<Vec3>& v) {
    double worst = 0.0;
    for (const Vec3& x : v) worst = std::max(worst, std::max({std::abs(x.x), std::abs(x.y), std::abs(x.z)}));
    return worst;
}

double dot(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].dot(b[i]);
    return s;
}

} // namespace

MinimizeResult minimize_from(const EnergyContext& ctx, Magnetization init, std::string init_kind,
                             const MinimizeOptions& opts) {
    if (opts.max_iters < 1) throw InvalidArgument("minimize: max_iters must be >= 1");
    if (!(opts.grad_tol > 0.0)) throw InvalidArgument("minimize: grad_tol must be positive");

    constexpr double armijo_c = 1e-4;
    constexpr int max_backtracks = 60;

    MinimizeResult res;
    res.init_kind = std::move(init_kind);

    Magnetization m = std::move(init);
    EnergyContext::Eval eval = ctx.evaluate_with_gradient(m);
    std::vector<Vec3> pg = project_tangent(m, eval.gradient);
    double gn = sup_norm(pg);
    if (opts.record_trace) res.trace.push_back({0, eval.breakdown.total, gn});

    double step = opts.step_rule == StepRule::fixed ? opts.fixed_step
                                                    : 0.1 / std::max(gn, 1e-30);
    bool have_bb = false;

    int iter = 0;
    for (; iter < opts.max_iters; ++iter) {
        if (gn < opts.grad_tol) {
            res.converged = true;
            break;
        }
        const double g2 = dot(pg, pg);
        double t = step;
        bool accepted = false;
        bool backtracked = false;
        Magnetization trial;
        EnergyContext::Eval trial_eval;
        for (int bt = 0; bt < max_backtracks; ++bt) {
            bool valid = true;
            try {
                trial = retract(m, pg, -t);
            } catch (const InvalidArgument&) {
                valid = false; // a cell hit the origin; shrink the step
            }
            if (valid) {
                trial_eval = ctx.evaluate_with_gradient(trial);
                if (trial_eval.breakdown.total <= eval.breakdown.total - armijo_c * t * g2) {
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
            backtracked = true;
        }
        if (!accepted) break; // cannot make progress at any step length

        std::vector<Vec3> new_pg = project_tangent(trial, trial_eval.gradient);

        if (opts.step_rule == StepRule::bb_backtracking) {
            if (backtracked) {
                step = t; // rejected trials reset the BB memory
                have_bb = false;
            } else {
                if (have_bb) {
                    std::vector<Vec3> s(m.size()), y(m.size());
                    for (std::size_t i = 0; i < m.size(); ++i) {
                        s[i] = trial.get(i) - m.get(i);
                        y[i] = new_pg[i] - pg[i];
                    }
                    const double sy = dot(s, y);
                    const double ss = dot(s, s);
                    step = sy > 1e-300 ? std::clamp(ss / sy, 1e-12, 1e9) : t;
                } else {
                    step = t;
                }
                have_bb = true;
            }
        } else {
            step = opts.fixed_step;
        }

        m = std::move(trial);
        eval = std::move(trial_eval);
        pg = std::move(new_pg);
        gn = sup_norm(pg);
        if (opts.record_trace) res.trace.push_back({iter + 1, eval.breakdown.total, gn});
    }

    res.minimizer = std::move(m);
    res.energy = eval.breakdown;
    res.iterations = iter;
    if (gn < opts.grad_tol) res.converged = true;
    return res;
}

MinimizeResult minimize(const BallMesh& mesh, const EnergyModel& model,
                        const MinimizeOptions& opts) {
    const EnergyContext ctx(mesh, model);

    std::vector<std::pair<std::string, Magnetization>> inits;
    if (opts.init_constant) inits.emplace_back("constant_e3", constant_field(mesh, {0.0, 0.0, 1.0}));
    if (opts.init_vortex) inits.emplace_back("vortex", vortex_field(mesh));
    for (int r = 0; r < opts.random_restarts; ++r)
        inits.emplace_back("random_" + std::to_string(r),
                           random_unit_field(mesh, opts.seed + static_cast<std::uint64_t>(r)));
    if (inits.empty()) throw InvalidArgument("minimize: no starting fields configured");

    MinimizeResult best;
    bool have_best = false;
    std::vector<std::pair<std::string, double>> init_energies;
    for (auto& [kind, field] : inits) {
        init_energies.emplace_back(kind, ctx.breakdown(field).total);
        MinimizeResult r = minimize_from(ctx, std::move(field), kind, opts);
        if (!have_best || r.energy.total < best.energy.total) {
            best = std::move(r);
            have_best = true;
        }
    }
    best.init_energies = std::move(init_energies);
    return best;
}

} // namespace micromag
