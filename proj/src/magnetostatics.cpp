// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#include "micromag/magnetostatics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "micromag/errors.hpp"
#include "micromag/quadrature.hpp"
#include "micromag/simd/pair_kernels.hpp"

namespace micromag {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

void dipole_sum_soa(const BallMesh& mesh, const double* mx, const double* my, const double* mz,
                    std::vector<double>& hx, std::vector<double>& hy, std::vector<double>& hz) {
    const std::size_t n = mesh.cell_count();
    hx.assign(n, 0.0);
    hy.assign(n, 0.0);
    hz.assign(n, 0.0);
    const auto& kernels = simd::active_kernels();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        kernels.dipole_field_rows(mesh.xs.data(), mesh.ys.data(), mesh.zs.data(), mx, my, mz, n, i,
                                  i + 1, hx.data(), hy.data(), hz.data());
    }
}

DemagField demag_from_soa(const BallMesh& mesh, const double* mx, const double* my,
                          const double* mz) {
    const std::size_t n = mesh.cell_count();
    std::vector<double> hx, hy, hz;
    dipole_sum_soa(mesh, mx, my, mz, hx, hy, hz);
    DemagField out;
    out.mesh = &mesh;
    out.values.resize(n);
    const double scale = mesh.cell_weight / kFourPi;
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = Vec3{hx[i], hy[i], hz[i]} * scale -
                        Vec3{mx[i], my[i], mz[i]} * (1.0 / 3.0);
    }
    return out;
}

} // namespace

DemagField demag_field(const BallMesh& mesh, const std::vector<Vec3>& m) {
    if (m.size() != mesh.cell_count())
        throw InvalidArgument("demag_field: field size does not match the mesh");
    std::vector<double> mx(m.size()), my(m.size()), mz(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        mx[i] = m[i].x;
        my[i] = m[i].y;
        mz[i] = m[i].z;
    }
    return demag_from_soa(mesh, mx.data(), my.data(), mz.data());
}

DemagField demag_field(const BallMesh& mesh, const Magnetization& m) {
    if (m.mesh != &mesh) throw InvalidArgument("demag_field: field built on a different mesh");
    return demag_from_soa(mesh, m.x.data(), m.y.data(), m.z.data());
}

namespace {
double energy_against(const BallMesh& mesh, const std::vector<Vec3>& m, const DemagField& h) {
    std::vector<double> terms(m.size());
    const double w = mesh.cell_weight;
    for (std::size_t i = 0; i < m.size(); ++i) terms[i] = -w * h.values[i].dot(m[i]);
    return tree_sum(terms);
}
} // namespace

double magnetostatic_energy(const BallMesh& mesh, const std::vector<Vec3>& m,
                            const DemagField& field_of_m) {
    return energy_against(mesh, m, field_of_m);
}

double magnetostatic_energy(const BallMesh& mesh, const std::vector<Vec3>& m) {
    const DemagField h = demag_field(mesh, m);
    return energy_against(mesh, m, h);
}

double magnetostatic_energy(const BallMesh& mesh, const Magnetization& m) {
    const DemagField h = demag_field(mesh, m);
    std::vector<double> terms(m.size());
    const double w = mesh.cell_weight;
    for (std::size_t i = 0; i < m.size(); ++i) terms[i] = -w * h.values[i].dot(m.get(i));
    return tree_sum(terms);
}

double magnetostatic_bilinear(const BallMesh& mesh, const std::vector<Vec3>& m,
                              const std::vector<Vec3>& u) {
    if (m.size() != mesh.cell_count() || u.size() != mesh.cell_count())
        throw InvalidArgument("magnetostatic_bilinear: fields must live on the given mesh");
    const DemagField hu = demag_field(mesh, u);
    return energy_against(mesh, m, hu);
}

double lower_bound_mean(const BallMesh& mesh, const std::vector<Vec3>& m) {
    std::vector<Vec3> terms(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) terms[i] = m[i];
    const Vec3 avg = tree_sum(terms) / static_cast<double>(m.size());
    return (1.0 / 3.0) * mesh.total_volume() * avg.norm2();
}

double lower_bound_mean(const BallMesh& mesh, const Magnetization& m) {
    return lower_bound_mean(mesh, m.as_vectors());
}

// ---------------------------------------------------------------------------
// Surface representation
// ---------------------------------------------------------------------------

std::vector<double> surface_values_constant(const SphereQuadrature& quad, const Vec3& sigma) {
    std::vector<double> f(quad.node_count());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = sigma.dot(quad.normals[i]);
    return f;
}

std::vector<double> surface_values_vortex(const SphereQuadrature& quad) {
    std::vector<double> f(quad.node_count());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double t = quad.normals[i].z;
        f[i] = t * t * t;
    }
    return f;
}

namespace {

double min_node_spacing(const SphereQuadrature& quad) {
    // product structure: nearest neighbors sit either on the same ring or on
    // adjacent rings at the same azimuth
    const int n_phi = 2 * quad.n_theta;
    const double dphi = 2.0 * M_PI / n_phi;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> ring_t;
    for (std::size_t i = 0; i < quad.node_count(); i += n_phi) ring_t.push_back(quad.normals[i].z);
    for (std::size_t r = 0; r < ring_t.size(); ++r) {
        const double s = std::sqrt(std::max(0.0, 1.0 - ring_t[r] * ring_t[r]));
        if (s > 0.0) best = std::min(best, 2.0 * quad.radius * s * std::sin(0.5 * dphi));
        if (r + 1 < ring_t.size()) {
            const double dth = std::abs(std::acos(ring_t[r + 1]) - std::acos(ring_t[r]));
            best = std::min(best, quad.radius * dth);
        }
    }
    return best;
}

} // namespace

double surface_energy(const SphereQuadrature& quad, const std::vector<double>& f, SurfaceRule rule,
                      double delta_factor) {
    if (f.size() != quad.node_count())
        throw InvalidArgument("surface_energy: node values do not match the quadrature");
    const std::size_t n = quad.node_count();
    const double R = quad.radius;
    std::vector<double> row(n, 0.0);

    if (rule == SurfaceRule::subtract) {
        // polarization against the exact rule int dS(y)/|x-y| = 4 pi R:
        //   int f(x) f(y)/|x-y| = 4 pi R int f^2 - (1/2) int (f(x)-f(y))^2/|x-y|;
        // the difference quotient is bounded, so the product rule integrates it
        // accurately while the singular mass is carried by the exact term.
        // dynamic schedule: triangular rows, each row is still a fixed sum
#pragma omp parallel for schedule(dynamic, 32)
        for (std::int64_t a = 0; a < static_cast<std::int64_t>(n); ++a) {
            const Vec3 xa = quad.points[a];
            const double fa = f[a];
            double inner = 0.0;
            for (std::size_t b = static_cast<std::size_t>(a) + 1; b < n; ++b) {
                const double d = (xa - quad.points[b]).norm();
                const double df = fa - f[b];
                inner += quad.weights[b] * df * df / d;
            }
            row[a] = quad.weights[a] * (fa * fa * kFourPi * R - inner);
        }
    } else {
        const double delta = delta_factor * min_node_spacing(quad);
#pragma omp parallel for schedule(static)
        for (std::int64_t a = 0; a < static_cast<std::int64_t>(n); ++a) {
            const Vec3 xa = quad.points[a];
            double inner = 0.0;
            for (std::size_t b = 0; b < n; ++b) {
                if (static_cast<std::size_t>(a) == b) continue;
                const double d = (xa - quad.points[b]).norm();
                if (d < delta) continue;
                inner += quad.weights[b] * f[b] / d;
            }
            row[a] = quad.weights[a] * f[a] * inner;
        }
    }
    return tree_sum(row) / kFourPi;
}

// ---------------------------------------------------------------------------
// Hemisphere-reduced representation
// ---------------------------------------------------------------------------

namespace {

// int over the upper unit hemisphere of dS(y)/|x - y| for |x| = 1, x3 = t:
// azimuth in closed form (complete elliptic K), then adaptive in y3 with the
// logarithmic point split at y3 = t.
double hemisphere_inverse_distance_integral(double t) {
    const double s2 = std::max(0.0, 1.0 - t * t);
    const auto inner = [&](double u) {
        const double B = 2.0 * std::sqrt(s2 * std::max(0.0, 1.0 - u * u));
        const double A = 2.0 - 2.0 * t * u;
        const double k = std::sqrt(std::min(1.0 - 1e-16, 2.0 * B / (A + B)));
        return 4.0 * std::comp_ellint_1(k) / std::sqrt(A + B);
    };
    double total = 0.0;
    if (t > 0.0 && t < 1.0) {
        total += integrate_adaptive(inner, 0.0, t, 1e-12, 400, 1e-14).value;
        total += integrate_adaptive(inner, t, 1.0, 1e-12, 400, 1e-14).value;
    } else {
        total += integrate_adaptive(inner, 0.0, 1.0, 1e-12, 400, 1e-14).value;
    }
    return total;
}

double pow_int(double v, int p) {
    double out = 1.0;
    for (int i = 0; i < p; ++i) out *= v;
    return out;
}

} // namespace

double hemisphere_reduced_energy(const SphereQuadrature& quad, int p) {
    if (!quad.hemisphere)
        throw InvalidArgument("hemisphere_reduced_energy: quadrature must cover the upper hemisphere");
    if (p != 1 && p != 3) throw InvalidArgument("hemisphere_reduced_energy: p must be 1 or 3");
    const std::size_t n = quad.node_count();
    const double R = quad.radius;
    const double inv_R2 = 1.0 / (R * R);

    // per-ring exact inverse-distance integrals (distinct x3 values only)
    const int n_phi = 2 * quad.n_theta;
    std::vector<double> ring_integral(quad.n_theta);
#pragma omp parallel for schedule(static)
    for (int r = 0; r < quad.n_theta; ++r)
        ring_integral[r] = hemisphere_inverse_distance_integral(quad.normals[std::size_t(r) * n_phi].z);

    // W = (2 R^3/pi) * H,  H = (A - B)/4 on the unit hemisphere with
    // A = int g g / |x-y| (subtracted), B = int g g / |x-yr|, g = x3^p.
    std::vector<double> rowA(n, 0.0), rowB(n, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t a = 0; a < static_cast<std::int64_t>(n); ++a) {
        const Vec3 xa = quad.normals[a];
        const double wa = quad.weights[a] * inv_R2; // unit-sphere weight
        const double ga = pow_int(xa.z, p);
        double accA = 0.0, accB = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            const Vec3 yb = quad.normals[b];
            const double wb = quad.weights[b] * inv_R2;
            const double gb = pow_int(yb.z, p);
            const Vec3 yr{yb.x, yb.y, -yb.z};
            accB += wb * gb / (xa - yr).norm();
            if (static_cast<std::size_t>(a) == b) continue;
            accA += wb * (gb - ga) / (xa - yb).norm();
        }
        const double Na = ring_integral[static_cast<std::size_t>(a) / n_phi];
        rowA[a] = wa * ga * (accA + ga * Na);
        rowB[a] = wa * ga * accB;
    }
    const double H = (tree_sum(rowA) - tree_sum(rowB)) / 4.0;
    return 2.0 * R * R * R / M_PI * H;
}

double hemisphere_reduced_exact(int p, double rel_tol) {
    if (p != 1 && p != 3) throw InvalidArgument("hemisphere_reduced_exact: p must be 1 or 3");
    // H = 2 pi int int t^p u^p [ K(k1)/sqrt(A1+B) - K(k2)/sqrt(A2+B) ] dt du.
    // The inner integral has a log point singularity at u = t (split there);
    // the outer integrand loses smoothness toward t = 1, so the composite
    // rule grades its panels geometrically into that endpoint.
    const double inner_tol = std::max(3e-12, 0.01 * rel_tol);
    const auto inner_of = [&](double t) {
        const double s2t = 1.0 - t * t;
        const auto f = [&](double u) {
            const double B = 2.0 * std::sqrt(std::max(0.0, s2t * (1.0 - u * u)));
            const double A1 = 2.0 - 2.0 * t * u;
            const double A2 = 2.0 + 2.0 * t * u;
            const double k1 = std::sqrt(std::min(1.0 - 1e-16, 2.0 * B / (A1 + B)));
            const double k2 = std::sqrt(std::min(1.0 - 1e-16, 2.0 * B / (A2 + B)));
            const double part = std::comp_ellint_1(k1) / std::sqrt(A1 + B) -
                                std::comp_ellint_1(k2) / std::sqrt(A2 + B);
            return pow_int(t, p) * pow_int(u, p) * part;
        };
        double total = 0.0;
        if (t > 0.0 && t < 1.0) {
            total += integrate_adaptive(f, 0.0, t, inner_tol, 300, 1e-15).value;
            total += integrate_adaptive(f, t, 1.0, inner_tol, 300, 1e-15).value;
        } else {
            total += integrate_adaptive(f, 0.0, 1.0, inner_tol, 300, 1e-15).value;
        }
        return total;
    };

    std::vector<double> cuts{0.0, 0.125, 0.25, 0.375, 0.5};
    for (double d = 0.25; d > 1e-10; d *= 0.5) cuts.push_back(1.0 - d);
    cuts.push_back(1.0);
    std::vector<double> panels(cuts.size() - 1);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(panels.size()); ++i)
        panels[i] =
            integrate_adaptive(inner_of, cuts[i], cuts[i + 1], rel_tol, 30, 1e-13).value;
    const double H = 2.0 * M_PI * tree_sum(panels);
    return 2.0 / M_PI * H;
}

VortexGap vortex_energy_gap(double R, int n_theta) {
    if (!(R > 0.0)) throw InvalidArgument("vortex_energy_gap: R must be positive");
    VortexGap out;
    out.n_theta = n_theta;
    const SphereQuadrature quad = build_sphere_quadrature(R, n_theta);
    const double w_const = surface_energy(quad, surface_values_constant(quad, {0.0, 0.0, 1.0}));
    const double w_vortex = surface_energy(quad, surface_values_vortex(quad));
    out.gap = w_const - w_vortex;
    out.c2 = out.gap / (R * R * R);

    const SphereQuadrature upper = build_hemisphere_quadrature(R, n_theta);
    const double wh_const = hemisphere_reduced_energy(upper, 1);
    const double wh_vortex = hemisphere_reduced_energy(upper, 3);
    out.gap_hemisphere = wh_const - wh_vortex;
    out.c2_hemisphere = out.gap_hemisphere / (R * R * R);
    return out;
}

// ---------------------------------------------------------------------------
// Scalar potential
// ---------------------------------------------------------------------------

namespace {

int nearest_cell(const BallMesh& mesh, const Vec3& p) {
    // pull the probe just inside the ball, then search the lattice
    const double shrink = (mesh.radius - 0.5 * mesh.spacing) / std::max(p.norm(), 1e-300);
    const Vec3 q = p.norm() > mesh.radius - 0.5 * mesh.spacing ? p * shrink : p;
    const double h = mesh.spacing;
    const int i0 = static_cast<int>(std::floor(q.x / h - 0.5 + 0.5));
    const int j0 = static_cast<int>(std::floor(q.y / h - 0.5 + 0.5));
    const int k0 = static_cast<int>(std::floor(q.z / h - 0.5 + 0.5));
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int radius = 1; radius <= 4 && best < 0; ++radius) {
        for (int di = -radius; di <= radius; ++di)
            for (int dj = -radius; dj <= radius; ++dj)
                for (int dk = -radius; dk <= radius; ++dk) {
                    const int c = mesh.cell_at(i0 + di, j0 + dj, k0 + dk);
                    if (c < 0) continue;
                    const double d2 = (mesh.centers[c] - p).norm2();
                    if (d2 < best_d2) {
                        best_d2 = d2;
                        best = c;
                    }
                }
    }
    return best;
}

} // namespace

double scalar_potential(const BallMesh& mesh, const SphereQuadrature& quad, const Magnetization& m,
                        const Vec3& x, bool perturb_on_node) {
    const double tiny = 1e-12 * std::max(mesh.radius, 1.0);
    const DivergenceField div = discrete_divergence(m);
    Vec3 probe = x;
    for (int attempt = 0; attempt < 2; ++attempt) {
        bool coincident = false;
        for (std::size_t c = 0; c < mesh.cell_count() && !coincident; ++c)
            coincident = (probe - mesh.centers[c]).norm() < tiny;
        for (std::size_t q = 0; q < quad.node_count() && !coincident; ++q)
            coincident = (probe - quad.points[q]).norm() < tiny;
        if (!coincident) break;
        if (!perturb_on_node)
            throw InvalidArgument("scalar_potential: x coincides with a source node");
        probe += Vec3{1.0, 1.0, 1.0} * (1e-9 * std::max(mesh.radius, 1.0));
    }
    std::vector<double> vol_terms(mesh.cell_count(), 0.0);
    const double w = mesh.cell_weight;
    for (std::size_t c = 0; c < mesh.cell_count(); ++c)
        vol_terms[c] = -div.values[c] * w / (probe - mesh.centers[c]).norm();
    std::vector<double> surf_terms(quad.node_count(), 0.0);
    for (std::size_t q = 0; q < quad.node_count(); ++q) {
        const int c = nearest_cell(mesh, quad.points[q]);
        const double f = c >= 0 ? m.get(c).dot(quad.normals[q]) : 0.0;
        surf_terms[q] = f * quad.weights[q] / (probe - quad.points[q]).norm();
    }
    return (tree_sum(vol_terms) + tree_sum(surf_terms)) / kFourPi;
}

bool check_divergence_free(const Magnetization& m, double threshold) {
    const DivergenceField div = discrete_divergence(m);
    if (div.l2_norm <= threshold) return true;
    std::fprintf(stderr,
                 "micromag: surface representation requested for a field whose discrete "
                 "divergence L2 norm is %.3e (threshold %.3e)\n",
                 div.l2_norm, threshold);
    return false;
}

} // namespace micromag
