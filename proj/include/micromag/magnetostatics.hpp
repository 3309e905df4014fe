// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "micromag/fields.hpp"
#include "micromag/geometry.hpp"
#include "micromag/vec3.hpp"

namespace micromag {

/// Demagnetizing field at cell centers.
struct DemagField {
    const BallMesh* mesh = nullptr;
    std::vector<Vec3> values;
};

/// h_d(x_i) = sum_{j != i} D(x_i - x_j) m_j w_j - (1/3) m_i with the dipole
/// kernel D(r) = (1/4pi)(3 rhat rhat^T - I)/|r|^3; the -(1/3)I term is the
/// cubic-cell self tensor. Linear in m; m need not be unit (the bilinear
/// form and linearity tests feed raw fields).
DemagField demag_field(const BallMesh& mesh, const std::vector<Vec3>& m);
DemagField demag_field(const BallMesh& mesh, const Magnetization& m);

/// W = -sum_i h_d(x_i) . m_i w_i.
double magnetostatic_energy(const BallMesh& mesh, const Magnetization& m);
double magnetostatic_energy(const BallMesh& mesh, const std::vector<Vec3>& m);
double magnetostatic_energy(const BallMesh& mesh, const std::vector<Vec3>& m,
                            const DemagField& field_of_m);

/// Bilinear form W(m, u) = -sum_i h_d[u](x_i) . m_i w_i. Symmetric to
/// round-off; u need not be unit-norm.
double magnetostatic_bilinear(const BallMesh& mesh, const std::vector<Vec3>& m,
                              const std::vector<Vec3>& u);

/// (1/3) |Omega_disc| |<m>|^2, the mean-field lower bound for W.
double lower_bound_mean(const BallMesh& mesh, const std::vector<Vec3>& m);
double lower_bound_mean(const BallMesh& mesh, const Magnetization& m);

enum class SurfaceRule {
    subtract,    // singularity subtraction against the exact rule int dS/|x-y| = 4 pi R
    exclude_ring // drop node pairs with |x-y| < delta_factor * min node spacing
};

/// Surface-charge representation of the self-energy for divergence-free
/// fields: W = (1/4pi) sum over node pairs of f(x) f(y) / |x-y|, where
/// f = m . n at the nodes. The diagonal is handled per the chosen rule.
double surface_energy(const SphereQuadrature& quad, const std::vector<double>& m_dot_n,
                      SurfaceRule rule = SurfaceRule::subtract, double delta_factor = 0.5);

/// f = sigma . n at the quadrature nodes.
std::vector<double> surface_values_constant(const SphereQuadrature& quad, const Vec3& sigma);
/// f = (x3/R)^3, the vortex surface charge.
std::vector<double> surface_values_vortex(const SphereQuadrature& quad);

/// Hemisphere-reduced representation
///   W = (2 R^3 / pi) int_{S+ x S+} x3^(p+1) y3^(p+1) / omega(x,y) dS dS,
/// omega = |x-y| |x-yr| (|x-yr| + |x-y|), yr the reflection of y through the
/// equator. p = 1 reproduces W(e3), p = 3 reproduces W(vortex). Evaluated on
/// the given upper-hemisphere quadrature with the diagonal split off against
/// per-node exact integrals (complete elliptic reduction).
double hemisphere_reduced_energy(const SphereQuadrature& upper_quad, int p);

/// Same integral reduced to a 2D adaptive quadrature over (x3, y3) with the
/// azimuth integrated in closed form (complete elliptic K). Machine-accurate;
/// serves as the golden-value oracle. Returns the unit-sphere value W(B_1).
double hemisphere_reduced_exact(int p, double rel_tol = 1e-11);

struct VortexGap {
    double gap = 0.0;            // W(e3) - W(vortex) on B_R, raw surface route
    double c2 = 0.0;             // gap / R^3
    double gap_hemisphere = 0.0; // same gap via the hemisphere-reduced route
    double c2_hemisphere = 0.0;
    int n_theta = 0;
};

VortexGap vortex_energy_gap(double R, int n_theta);

/// Scalar potential Phi(x) from the volume-charge (-div m) and surface-charge
/// (m . n) sums. The surface trace of m is sampled from the nearest cell.
/// When x coincides with a source point: throws by default, or nudges x by
/// 1e-9 R when perturb_on_node is set.
double scalar_potential(const BallMesh& mesh, const SphereQuadrature& quad, const Magnetization& m,
                        const Vec3& x, bool perturb_on_node = false);

/// Advisory check used before surface_energy: discrete divergence L2 norm
/// below the threshold. Returns true when the field passes; emits a warning
/// to stderr otherwise (never throws).
bool check_divergence_free(const Magnetization& m, double threshold);

} // namespace micromag
