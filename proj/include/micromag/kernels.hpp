// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "micromag/vec3.hpp"

namespace micromag {

/// Parameters of the singular lower bound j(z) >= C / |z|^(3+2s) on |z| < R0.
struct J5Params {
    double C = 0.0;
    double s = 0.0;  // in (0,1)
    double R0 = 0.0; // may be +inf
};

/// Interaction kernel j : R^3 -> [0, +inf]. Values are plain doubles; the
/// singular value at z = 0 is the IEEE infinity, never a large finite float.
/// Radial kernels additionally carry the profile g with j(z) = g(|z|), which
/// the radial quadrature diagnostics require.
struct Kernel {
    std::string name;
    std::function<double(Vec3)> evaluator;
    std::function<double(double)> radial; // empty for non-radial kernels
    bool radial_monotone = false;         // g non-increasing, when known
    std::optional<J5Params> j5;

    bool is_radial() const { return static_cast<bool>(radial); }
    double operator()(const Vec3& z) const { return evaluator(z); }
};

enum class BuiltinKernel { fractional, truncated_fractional, constant_one, gaussian4, rogers };

enum class TruncationTail { none, gaussian };

/// Parameters for make_builtin_kernel; fields not used by a family are ignored.
struct KernelParams {
    double s = 0.5;          // fractional exponent, in (0,1)
    double gamma = 1.0;      // screening rate of the exponential kernel
    double amplitude = 1.0;  // overall positive scale
    TruncationTail tail = TruncationTail::gaussian; // truncated_fractional only
};

Kernel make_builtin_kernel(BuiltinKernel which, const KernelParams& params = {});
Kernel make_builtin_kernel(const std::string& name, const KernelParams& params = {});

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

struct SymmetryCheck {
    bool symmetric = false;
    double max_asymmetry = 0.0;
};

/// Samples j(z) against j(-z) on random points (log-uniform radii).
/// Two infinities compare equal.
SymmetryCheck check_symmetry(const Kernel& k, int samples, std::uint64_t seed);

struct RadialQuadratureConfig {
    double inner_cutoff = 1e-14;
    double rel_tol = 1e-10;     // per-piece adaptive tolerance
    double growth_tol = 1e-8;   // outer doubling convergence threshold
    int max_doublings = 64;
    int mc_directions = 512;    // non-radial Monte Carlo fallback
    std::uint64_t mc_seed = 2024;
};

struct LevyEstimate {
    double value = 0.0;
    double error = 0.0;      // quadrature error indicator
    bool infinite = false;   // truncated integrals kept growing
    bool stochastic = false; // Monte Carlo fallback was used
    double outer_cutoff = 0.0;
};

/// L_j = int min{1, |z|^2} j(z) dz. Radial reduction with adaptive panels;
/// the outer cutoff doubles until the increment stabilizes or the growth
/// flags divergence. Non-radial kernels go through an angular Monte Carlo
/// average, flagged stochastic.
LevyEstimate levy_constant(const Kernel& k, const RadialQuadratureConfig& quad = {});

struct EssentialInfimum {
    double value = 0.0;
    std::size_t samples = 0; // 0 when evaluated exactly via monotonicity
    bool exact = false;
};

/// essinf of j over |z| < diameter. Exact (profile at the diameter) for
/// radially monotone kernels, dense sampling otherwise.
EssentialInfimum essential_infimum(const Kernel& k, double diameter,
                                   std::size_t samples = 200000, std::uint64_t seed = 7);

enum class J3Verdict { diverging, converging, inconclusive };

struct J3Diagnostic {
    std::vector<double> eps;
    std::vector<double> integral; // I(eps) = int_{B_1 \ B_eps} j
    double fitted_exponent = 0.0; // slope of log I vs log(1/eps)
    J3Verdict verdict = J3Verdict::inconclusive;
};

/// Heuristic divergence diagnostic for the origin singularity. A finite
/// computation cannot decide non-integrability; the verdict is advisory.
J3Diagnostic check_non_integrability(const Kernel& k, const std::vector<double>& eps_grid,
                                     const RadialQuadratureConfig& quad = {});

struct TailDecayEntry {
    double R = 0.0;
    double value = 0.0; // (1/R^2) int_{B_R} |z|^2 j(z) dz
};

std::vector<TailDecayEntry> tail_decay_table(const Kernel& k, const std::vector<double>& R_list,
                                             const RadialQuadratureConfig& quad = {});

struct J5Fit {
    double C = 0.0;
    double s = 0.0;
    bool plausible = false; // fitted s landed in (0,1)
};

/// Fits C, s of a power-law lower envelope on sampled radii in (0, r_max).
J5Fit fit_j5(const Kernel& k, double r_max = 0.5, int points = 48);

/// One-stop diagnostic record.
struct KernelReport {
    std::string kernel_name;
    SymmetryCheck symmetry;
    LevyEstimate levy;
    J3Diagnostic j3;
    std::vector<TailDecayEntry> tail;
    bool tail_decaying = false; // table decreasing past its peak; false flags a fat tail
    std::optional<J5Fit> j5_fit;
    std::optional<J5Params> declared_j5;
};

KernelReport build_kernel_report(const Kernel& k, const RadialQuadratureConfig& quad = {},
                                 std::uint64_t seed = 7);

std::string kernel_report_to_json(const KernelReport& report);
std::string kernel_report_to_table(const KernelReport& report);

const char* to_string(J3Verdict v);

} // namespace micromag
