// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#include "micromag/regimes.hpp"

#include <cmath>

#include "micromag/errors.hpp"
#include "micromag/magnetostatics.hpp"
#include "micromag/quadrature.hpp"

namespace micromag {

namespace {
constexpr double kH1VortexConstant = 4.0 / 15.0 * M_PI * (73.0 - 15.0 * M_PI);

double ball_volume(double R) { return 4.0 / 3.0 * M_PI * R * R * R; }
} // namespace

double poincare_constant(const Kernel& k, double R, double infimum_span) {
    if (!(R > 0.0)) throw InvalidArgument("poincare_constant: R must be positive");
    const EssentialInfimum q = essential_infimum(k, infimum_span * R);
    if (!(q.value > 0.0))
        throw CriterionInapplicable(
            "poincare_constant: the kernel infimum vanishes on this domain");
    return 1.0 / (q.value * ball_volume(R));
}

std::vector<RegimeInterval> constant_regime_set(const Kernel& k, double r_min, double r_max,
                                                int grid_points, double r_tol,
                                                double infimum_span) {
    if (!(r_min > 0.0) || !(r_max > r_min))
        throw InvalidArgument("constant_regime_set: need 0 < r_min < r_max");
    const auto criterion = [&](double R) {
        try {
            return poincare_constant(k, R, infimum_span) < 3.0;
        } catch (const CriterionInapplicable&) {
            return false;
        }
    };
    const auto refine = [&](double lo, double hi, bool lo_inside) {
        // bisect the boundary of {C_R < 3} between lo and hi
        while (hi - lo > r_tol) {
            const double mid = 0.5 * (lo + hi);
            if (criterion(mid) == lo_inside)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    std::vector<RegimeInterval> intervals;
    const double ratio = std::pow(r_max / r_min, 1.0 / (grid_points - 1));
    double prev_r = r_min;
    bool prev_in = criterion(r_min);
    std::optional<RegimeInterval> open;
    if (prev_in) open = RegimeInterval{r_min, r_max, true, false};
    for (int i = 1; i < grid_points; ++i) {
        const double r = r_min * std::pow(ratio, i);
        const bool in = criterion(r);
        if (in != prev_in) {
            const double boundary = refine(prev_r, r, prev_in);
            if (in) {
                open = RegimeInterval{boundary, r_max, false, false};
            } else if (open) {
                open->hi = boundary;
                intervals.push_back(*open);
                open.reset();
            }
        }
        prev_r = r;
        prev_in = in;
    }
    if (open) {
        open->open_right = true;
        intervals.push_back(*open);
    }
    return intervals;
}

double critical_radius_small(const Kernel& k) {
    if (!k.j5)
        throw CriterionInapplicable("critical_radius_small: kernel declares no singular lower bound");
    const double C = k.j5->C;
    const double s = k.j5->s;
    const double R0 = k.j5->R0;
    const double r_star =
        std::min(0.5 * R0, std::pow(4.0 * M_PI * C / std::pow(2.0, 3.0 + 2.0 * s), 1.0 / (2.0 * s)));
    // the sufficient condition Q_{B_R} > 1/(4 pi R^3) must hold just inside R*
    const double probe = r_star * (1.0 - 1e-6);
    const double q = essential_infimum(k, 2.0 * probe).value;
    if (!(q > 1.0 / (4.0 * M_PI * probe * probe * probe)))
        throw CriterionInapplicable(
            "critical_radius_small: declared lower-bound parameters are inconsistent with the kernel");
    return r_star;
}

LargeBodyScan critical_radius_large_upper(const Kernel& k, const LargeBodyScanConfig& config) {
    if (config.R_grid.empty())
        throw InvalidArgument("critical_radius_large_upper: empty radius grid");
    const LevyEstimate levy = levy_constant(k);
    if (levy.infinite)
        throw CriterionInapplicable(
            "critical_radius_large_upper: the Levy constant is infinite; the tail comparison "
            "does not apply");
    if (!k.is_radial())
        throw Unsupported("critical_radius_large_upper: needs a radial kernel");

    LargeBodyScan scan;
    const double w_vortex_unit = hemisphere_reduced_exact(3);
    scan.c2 = 4.0 * M_PI / 9.0 - w_vortex_unit;

    EnergyModel model;
    model.kernel = &k;
    model.exchange = true;
    model.magnetostatic = false;

    // first pass: measured rows + calibration of the extension constant
    scan.c_tilde = 0.0;
    std::vector<double> tail_integral(config.R_grid.size());
    for (std::size_t i = 0; i < config.R_grid.size(); ++i) {
        const double R = config.R_grid[i];
        const double h = 2.0 * R / config.cells_per_diameter;
        const BallMesh mesh = build_ball_mesh(R, h);
        const Magnetization vortex = vortex_field(mesh);

        ComparisonRow row;
        row.R = R;
        row.vortex_exchange = EnergyContext(mesh, model).breakdown(vortex).exchange;
        row.vortex_magnetostatic = w_vortex_unit * R * R * R;
        row.constant_energy = 4.0 * M_PI / 9.0 * R * R * R;
        row.comparison = row.vortex_exchange + row.vortex_magnetostatic - row.constant_energy;
        const auto integrand = [&](double r) { return r * r * r * r * k.radial(r); };
        tail_integral[i] = 4.0 * M_PI * integrate_adaptive(integrand, 1e-12, 2.0 * R, 1e-10).value;
        if (tail_integral[i] > 0.0)
            scan.c_tilde = std::max(scan.c_tilde, row.vortex_exchange /
                                                      (R * tail_integral[i] * kH1VortexConstant));
        scan.rows.push_back(row);
    }
    for (std::size_t i = 0; i < scan.rows.size(); ++i) {
        ComparisonRow& row = scan.rows[i];
        row.analytic_bound = scan.c_tilde * kH1VortexConstant * row.R * tail_integral[i] -
                             scan.c2 * row.R * row.R * row.R;
        if (!scan.r_estimate && row.comparison < 0.0) scan.r_estimate = row.R;
    }
    return scan;
}

const char* to_string(Classification c) {
    switch (c) {
        case Classification::constant: return "constant";
        case Classification::nonconstant: return "nonconstant";
        case Classification::indeterminate: break;
    }
    return "indeterminate";
}

std::vector<RegimeSweepRow> regime_sweep(const Kernel& k, const SweepConfig& config) {
    if (config.points < 2) throw InvalidArgument("regime_sweep: need at least 2 radii");
    if (!(config.r_min > 0.0) || !(config.r_max > config.r_min))
        throw InvalidArgument("regime_sweep: need 0 < r_min < r_max");

    EnergyModel model;
    model.kernel = &k;
    model.exchange = true;
    model.magnetostatic = true;

    std::vector<RegimeSweepRow> rows;
    const double ratio = std::pow(config.r_max / config.r_min, 1.0 / (config.points - 1));
    for (int i = 0; i < config.points; ++i) {
        const double R = config.r_min * std::pow(ratio, i);
        RegimeSweepRow row;
        row.R = R;
        row.constant_energy = 4.0 * M_PI / 9.0 * R * R * R;
        try {
            const double h = 2.0 * R / config.cells_per_diameter;
            const BallMesh mesh = build_ball_mesh(R, h);

            MinimizeOptions opts = config.minimize;
            opts.seed = config.minimize.seed + static_cast<std::uint64_t>(1000 * i);
            const MinimizeResult best = minimize(mesh, model, opts);

            row.best_energy = best.energy.total;
            row.deficit = uniformity_deficit(best.minimizer);
            row.restarts_used = static_cast<int>(best.init_energies.size());
            row.best_init = best.init_kind;
            for (const auto& [kind, e] : best.init_energies)
                if (kind == "constant_e3") row.constant_energy_disc = e;

            // a winning state that is uniform (tiny deficit) is the constant
            // phase regardless of which restart found it; otherwise a clear
            // energy margin below the constant candidate flags the
            // nonconstant phase
            const double reference = row.constant_energy_disc;
            if (row.deficit < config.deficit_threshold)
                row.classification = Classification::constant;
            else if (row.best_energy < (1.0 - config.energy_margin) * reference)
                row.classification = Classification::nonconstant;
            else
                row.classification = Classification::indeterminate;
        } catch (const std::exception& e) {
            row.note = e.what();
            row.classification = Classification::indeterminate;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

bool classification_is_monotone(const std::vector<RegimeSweepRow>& rows) {
    // allowed phase order: constant, indeterminate, nonconstant
    int phase = 0;
    for (const auto& row : rows) {
        const int p = row.classification == Classification::constant        ? 0
                      : row.classification == Classification::indeterminate ? 1
                                                                            : 2;
        if (p < phase) return false;
        phase = p;
    }
    return true;
}

} // namespace micromag
