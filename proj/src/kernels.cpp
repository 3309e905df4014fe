// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#include "micromag/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "micromag/errors.hpp"
#include "micromag/quadrature.hpp"
#include "micromag/rng.hpp"

namespace micromag {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Kernel make_radial_kernel(std::string name, std::function<double(double)> profile, bool monotone,
                          std::optional<J5Params> j5) {
    Kernel k;
    k.name = std::move(name);
    k.radial = std::move(profile);
    const auto g = k.radial;
    k.evaluator = [g](Vec3 z) { return g(z.norm()); };
    k.radial_monotone = monotone;
    k.j5 = j5;
    return k;
}

} // namespace

Kernel make_builtin_kernel(BuiltinKernel which, const KernelParams& p) {
    const double a = p.amplitude;
    if (!(a > 0.0)) throw InvalidArgument("kernel amplitude must be positive");
    switch (which) {
        case BuiltinKernel::fractional: {
            if (!(p.s > 0.0 && p.s < 1.0))
                throw InvalidArgument("fractional kernel: s must lie in (0,1)");
            const double expo = 3.0 + 2.0 * p.s;
            return make_radial_kernel(
                "fractional", [a, expo](double r) { return r == 0.0 ? kInf : a * std::pow(r, -expo); },
                true, J5Params{a, p.s, kInf});
        }
        case BuiltinKernel::truncated_fractional: {
            if (!(p.s > 0.0 && p.s < 1.0))
                throw InvalidArgument("truncated_fractional kernel: s must lie in (0,1)");
            const double expo = 3.0 + 2.0 * p.s;
            const bool gaussian_tail = p.tail == TruncationTail::gaussian;
            return make_radial_kernel(
                "truncated_fractional",
                [a, expo, gaussian_tail](double r) {
                    if (r == 0.0) return kInf;
                    if (r <= 1.0) return a * std::pow(r, -expo);
                    return gaussian_tail ? a * std::exp(1.0 - r * r) : 0.0;
                },
                true, J5Params{a, p.s, 1.0});
        }
        case BuiltinKernel::constant_one:
            return make_radial_kernel("constant_one", [a](double) { return a; }, true, std::nullopt);
        case BuiltinKernel::gaussian4:
            return make_radial_kernel(
                "gaussian4", [](double r) { return 4.0 * std::exp(-r * r); }, true, std::nullopt);
        case BuiltinKernel::rogers: {
            if (!(p.gamma > 0.0)) throw InvalidArgument("rogers kernel: gamma must be positive");
            const double g = p.gamma;
            return make_radial_kernel(
                "rogers", [a, g](double r) { return r == 0.0 ? kInf : a * std::exp(-g * r) / r; },
                true, std::nullopt);
        }
    }
    throw InvalidArgument("unknown builtin kernel");
}

Kernel make_builtin_kernel(const std::string& name, const KernelParams& params) {
    if (name == "fractional") return make_builtin_kernel(BuiltinKernel::fractional, params);
    if (name == "truncated_fractional")
        return make_builtin_kernel(BuiltinKernel::truncated_fractional, params);
    if (name == "constant_one") return make_builtin_kernel(BuiltinKernel::constant_one, params);
    if (name == "gaussian4") return make_builtin_kernel(BuiltinKernel::gaussian4, params);
    if (name == "rogers") return make_builtin_kernel(BuiltinKernel::rogers, params);
    throw InvalidArgument("unknown kernel name: " + name);
}

SymmetryCheck check_symmetry(const Kernel& k, int samples, std::uint64_t seed) {
    if (samples < 1) throw InvalidArgument("check_symmetry: samples must be >= 1");
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        // log-uniform radii probe the singular core and the tail alike
        const double r = std::pow(10.0, rng.uniform(-3.0, 1.0));
        const Vec3 z = rng.unit_vector() * r;
        const double a = k(z);
        const double b = k(-z);
        if (std::isinf(a) && std::isinf(b)) continue;
        worst = std::max(worst, std::abs(a - b));
    }
    return {worst == 0.0, worst};
}

namespace {

// Integrates r^2 * g(r) * extra(r) over [lo, hi] with a log-graded pre-split
// so endpoint singularities of Levy order are resolved.
double radial_piece(const std::function<double(double)>& g,
                    const std::function<double(double)>& extra, double lo, double hi,
                    double rel_tol, double* err_acc) {
    const auto f = [&](double r) { return r * r * g(r) * extra(r); };
    double total = 0.0;
    double a = lo;
    // geometric split toward the left endpoint
    std::vector<double> cuts;
    for (double c = hi; c > lo * 4.0 && cuts.size() < 64; c *= 0.25) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    for (double c : cuts) {
        const AdaptiveResult res = integrate_adaptive(f, a, c, rel_tol);
        total += res.value;
        if (err_acc) *err_acc += res.error_estimate;
        a = c;
    }
    const AdaptiveResult res = integrate_adaptive(f, a, hi, rel_tol);
    total += res.value;
    if (err_acc) *err_acc += res.error_estimate;
    return total;
}

// Angular mean of j over 'dirs' fixed directions (Monte Carlo fallback profile).
std::function<double(double)> angular_mean_profile(const Kernel& k, int dirs, std::uint64_t seed) {
    auto directions = std::make_shared<std::vector<Vec3>>();
    Rng rng(seed);
    directions->reserve(dirs);
    for (int i = 0; i < dirs; ++i) directions->push_back(rng.unit_vector());
    return [&k, directions](double r) {
        double acc = 0.0;
        for (const Vec3& u : *directions) acc += k(u * r);
        return acc / static_cast<double>(directions->size());
    };
}

} // namespace

LevyEstimate levy_constant(const Kernel& k, const RadialQuadratureConfig& quad) {
    LevyEstimate out;
    std::function<double(double)> g = k.radial;
    if (!g) {
        g = angular_mean_profile(k, quad.mc_directions, quad.mc_seed);
        out.stochastic = true;
    }
    const auto min_one_r2 = [](double r) { return std::min(1.0, r * r); };
    const double four_pi = 4.0 * M_PI;

    double err = 0.0;
    double total = four_pi * radial_piece(g, min_one_r2, quad.inner_cutoff, 1.0, quad.rel_tol, &err);

    double r_out = 1.0;
    double prev_increment = kInf;
    for (int d = 0; d < quad.max_doublings; ++d) {
        const double next = 2.0 * r_out;
        const double inc = four_pi * radial_piece(g, min_one_r2, r_out, next, quad.rel_tol, &err);
        total += inc;
        r_out = next;
        if (!std::isfinite(total)) {
            out.infinite = true;
            break;
        }
        if (inc <= quad.growth_tol * std::abs(total)) break; // stabilized
        if (d > 2 && inc >= prev_increment) {
            out.infinite = true; // increments stopped shrinking: diverging tail
            break;
        }
        prev_increment = inc;
        if (d == quad.max_doublings - 1) out.infinite = true;
    }
    out.value = total;
    out.error = err * four_pi;
    out.outer_cutoff = r_out;
    return out;
}

EssentialInfimum essential_infimum(const Kernel& k, double diameter, std::size_t samples,
                                   std::uint64_t seed) {
    if (!(diameter > 0.0)) throw InvalidArgument("essential_infimum: diameter must be positive");
    if (k.radial_monotone) {
        const double v = k.is_radial() ? k.radial(diameter) : k({diameter, 0.0, 0.0});
        return {v, 0, true};
    }
    Rng rng(seed);
    double best = kInf;
    for (std::size_t i = 0; i < samples; ++i) {
        // uniform in the ball of radius 'diameter'
        const double r = diameter * std::cbrt(rng.uniform());
        best = std::min(best, k(rng.unit_vector() * r));
    }
    return {best, samples, false};
}

J3Diagnostic check_non_integrability(const Kernel& k, const std::vector<double>& eps_grid,
                                     const RadialQuadratureConfig& quad) {
    if (eps_grid.size() < 2) throw InvalidArgument("check_non_integrability: need >= 2 epsilons");
    for (std::size_t i = 1; i < eps_grid.size(); ++i)
        if (!(eps_grid[i] < eps_grid[i - 1]) || !(eps_grid[i] > 0.0))
            throw InvalidArgument("check_non_integrability: eps_grid must decrease toward 0");
    std::function<double(double)> g = k.radial;
    if (!g) g = angular_mean_profile(k, quad.mc_directions, quad.mc_seed);

    J3Diagnostic diag;
    diag.eps = eps_grid;
    const double four_pi = 4.0 * M_PI;
    // I(eps) accumulated from the outside in, reusing the shells
    double hi = 1.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        acc += four_pi * radial_piece(g, [](double) { return 1.0; }, eps_grid[i], hi, quad.rel_tol,
                                      nullptr);
        hi = eps_grid[i];
        diag.integral.push_back(acc);
    }

    // least-squares slope of log I against log(1/eps)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        if (!(diag.integral[i] > 0.0) || !std::isfinite(diag.integral[i])) continue;
        const double x = std::log(1.0 / eps_grid[i]);
        const double y = std::log(diag.integral[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    diag.fitted_exponent =
        m >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : std::numeric_limits<double>::quiet_NaN();

    const double last = diag.integral.back();
    const double prev = diag.integral[diag.integral.size() - 2];
    const bool stabilized = std::isfinite(last) && std::abs(last - prev) <= 1e-6 * std::abs(last);
    if (std::isfinite(diag.fitted_exponent) && diag.fitted_exponent > 0.05)
        diag.verdict = J3Verdict::diverging;
    else if (stabilized && std::abs(diag.fitted_exponent) <= 0.05)
        diag.verdict = J3Verdict::converging;
    else
        diag.verdict = J3Verdict::inconclusive;
    return diag;
}

std::vector<TailDecayEntry> tail_decay_table(const Kernel& k, const std::vector<double>& R_list,
                                             const RadialQuadratureConfig& quad) {
    for (std::size_t i = 0; i < R_list.size(); ++i)
        if (!(R_list[i] > 0.0) || (i > 0 && !(R_list[i] > R_list[i - 1])))
            throw InvalidArgument("tail_decay_table: R_list must be positive increasing");
    std::function<double(double)> g = k.radial;
    if (!g) g = angular_mean_profile(k, quad.mc_directions, quad.mc_seed);

    std::vector<TailDecayEntry> table;
    table.reserve(R_list.size());
    const double four_pi = 4.0 * M_PI;
    double lo = quad.inner_cutoff;
    double acc = 0.0; // int_{B_R} |z|^2 j dz, accumulated over shells
    for (double R : R_list) {
        acc += four_pi * radial_piece(g, [](double r) { return r * r; }, lo, R, quad.rel_tol, nullptr);
        lo = R;
        table.push_back({R, acc / (R * R)});
    }
    return table;
}

J5Fit fit_j5(const Kernel& k, double r_max, int points) {
    std::function<double(double)> g = k.radial;
    if (!g) g = angular_mean_profile(k, 128, 11);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int i = 0; i < points; ++i) {
        const double r = r_max * std::pow(10.0, -4.0 * (points - 1 - i) / double(points - 1));
        const double v = g(r);
        if (!(v > 0.0) || !std::isfinite(v)) continue;
        const double x = std::log(r);
        const double y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    J5Fit fit;
    if (m < 2) return fit;
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;
    fit.s = (-slope - 3.0) / 2.0;
    fit.C = std::exp(intercept);
    fit.plausible = fit.s > 0.0 && fit.s < 1.0;
    return fit;
}

KernelReport build_kernel_report(const Kernel& k, const RadialQuadratureConfig& quad,
                                 std::uint64_t seed) {
    KernelReport rep;
    rep.kernel_name = k.name;
    rep.symmetry = check_symmetry(k, 4096, seed);
    rep.levy = levy_constant(k, quad);
    rep.j3 = check_non_integrability(k, {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}, quad);
    rep.tail = tail_decay_table(k, {0.5, 1.0, 2.0, 4.0, 8.0, 10.0, 16.0, 32.0}, quad);
    std::size_t peak = 0;
    for (std::size_t i = 1; i < rep.tail.size(); ++i)
        if (rep.tail[i].value > rep.tail[peak].value) peak = i;
    rep.tail_decaying = peak + 1 < rep.tail.size() &&
                        rep.tail.back().value < 0.5 * rep.tail[peak].value;
    rep.declared_j5 = k.j5;
    const J5Fit fit = fit_j5(k);
    if (fit.plausible) rep.j5_fit = fit;
    return rep;
}

const char* to_string(J3Verdict v) {
    switch (v) {
        case J3Verdict::diverging: return "diverging";
        case J3Verdict::converging: return "converging";
        case J3Verdict::inconclusive: break;
    }
    return "inconclusive";
}

} // namespace micromag
