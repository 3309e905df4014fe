// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#include "micromag/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <mutex>

#include "micromag/errors.hpp"
#include "micromag/quadrature.hpp"

namespace micromag {

BallMesh build_ball_mesh(double R, double h) {
    if (!(R > 0.0) || !(h > 0.0)) throw InvalidArgument("build_ball_mesh: R and h must be positive");
    if (h >= R) throw InvalidArgument("build_ball_mesh: spacing h must satisfy h < R");

    BallMesh mesh;
    mesh.radius = R;
    mesh.spacing = h;
    mesh.cell_weight = h * h * h;
    mesh.has_grid = true;

    // Centers at (i + 1/2) h; the grid is offset so the origin is never a
    // cell center and the center set is symmetric under the cubic group.
    const int n = static_cast<int>(std::ceil(R / h + 0.5)) + 1;
    mesh.grid_n = n;
    const int g = 2 * n;
    mesh.cell_of_grid.assign(static_cast<std::size_t>(g) * g * g, -1);

    const double r2 = R * R;
    for (int i = -n; i < n; ++i) {
        const double x = (i + 0.5) * h;
        for (int j = -n; j < n; ++j) {
            const double y = (j + 0.5) * h;
            for (int k = -n; k < n; ++k) {
                const double z = (k + 0.5) * h;
                if (x * x + y * y + z * z >= r2) continue; // keep centers strictly inside
                const auto id = static_cast<std::int32_t>(mesh.centers.size());
                mesh.centers.push_back({x, y, z});
                mesh.xs.push_back(x);
                mesh.ys.push_back(y);
                mesh.zs.push_back(z);
                mesh.ci.push_back(i);
                mesh.cj.push_back(j);
                mesh.ck.push_back(k);
                mesh.cell_of_grid[(static_cast<std::size_t>(i + n) * g + (j + n)) * g + (k + n)] = id;
            }
        }
    }
    if (mesh.cell_count() < 8)
        throw MeshTooCoarse("build_ball_mesh: fewer than 8 cells; decrease h");
    return mesh;
}

BallMesh BallMesh::from_centers(std::vector<Vec3> centers, double weight_each, double radius) {
    BallMesh mesh;
    mesh.radius = radius;
    mesh.spacing = std::cbrt(weight_each);
    mesh.cell_weight = weight_each;
    mesh.has_grid = false;
    mesh.centers = std::move(centers);
    mesh.xs.reserve(mesh.centers.size());
    for (const auto& c : mesh.centers) {
        mesh.xs.push_back(c.x);
        mesh.ys.push_back(c.y);
        mesh.zs.push_back(c.z);
    }
    mesh.ci.assign(mesh.centers.size(), 0);
    mesh.cj.assign(mesh.centers.size(), 0);
    mesh.ck.assign(mesh.centers.size(), 0);
    return mesh;
}

double SphereQuadrature::total_weight() const {
    return tree_sum(weights.data(), weights.size());
}

namespace {

SphereQuadrature build_sphere_quadrature_impl(double R, int n_theta, bool hemisphere) {
    if (!(R > 0.0)) throw InvalidArgument("sphere quadrature: R must be positive");
    if (n_theta < 8) throw InvalidArgument("sphere quadrature: n_theta must be >= 8");

    SphereQuadrature q;
    q.radius = R;
    q.n_theta = n_theta;
    q.hemisphere = hemisphere;

    const GaussLegendre gl = gauss_legendre(n_theta);
    const int n_phi = 2 * n_theta;
    const double dphi = 2.0 * M_PI / n_phi;
    q.points.reserve(static_cast<std::size_t>(n_theta) * n_phi);

    for (int a = 0; a < n_theta; ++a) {
        // cos(theta) in [-1,1] for the full sphere, [0,1] for the upper half.
        const double t = hemisphere ? 0.5 * (gl.nodes[a] + 1.0) : gl.nodes[a];
        const double wt = hemisphere ? 0.5 * gl.weights[a] : gl.weights[a];
        const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        for (int b = 0; b < n_phi; ++b) {
            const double phi = (b + 0.5) * dphi;
            const Vec3 unit{s * std::cos(phi), s * std::sin(phi), t};
            q.points.push_back(unit * R);
            q.normals.push_back(unit);
            q.weights.push_back(R * R * wt * dphi);
        }
    }
    return q;
}

} // namespace

SphereQuadrature build_sphere_quadrature(double R, int n_theta) {
    return build_sphere_quadrature_impl(R, n_theta, false);
}

SphereQuadrature build_hemisphere_quadrature(double R, int n_theta) {
    return build_sphere_quadrature_impl(R, n_theta, true);
}

namespace {

template <typename BuildValues>
std::optional<OffsetTable> build_offset_table_common(const BallMesh& mesh, std::size_t bytes_per_entry,
                                                     std::size_t max_bytes, const BuildValues& build) {
    if (!mesh.has_grid) return std::nullopt;
    const int g = mesh.grid_dim();
    const int dim = 2 * g - 1;
    const std::size_t entries = static_cast<std::size_t>(dim) * dim * dim;
    if (entries * bytes_per_entry > max_bytes) return std::nullopt;

    OffsetTable table;
    table.dim = dim;
    const auto d2 = static_cast<std::int64_t>(dim) * dim;
    table.bias = static_cast<std::int32_t>((g - 1) * (d2 + dim + 1));
    table.code.resize(mesh.cell_count());
    for (std::size_t c = 0; c < mesh.cell_count(); ++c) {
        const std::int64_t gi = mesh.ci[c] + mesh.grid_n;
        const std::int64_t gj = mesh.cj[c] + mesh.grid_n;
        const std::int64_t gk = mesh.ck[c] + mesh.grid_n;
        table.code[c] = static_cast<std::int32_t>(gi * d2 + gj * dim + gk);
    }
    build(table, entries, dim, g);
    return table;
}

} // namespace

std::optional<OffsetTable> build_offset_table(const BallMesh& mesh,
                                              const std::function<double(Vec3)>& kernel,
                                              std::size_t max_bytes) {
    const double h = mesh.spacing;
    return build_offset_table_common(
        mesh, sizeof(double), max_bytes, [&](OffsetTable& t, std::size_t entries, int dim, int g) {
            t.values.assign(entries, 0.0);
            const std::int64_t d2 = static_cast<std::int64_t>(dim) * dim;
#pragma omp parallel for schedule(static)
            for (int di = -(g - 1); di <= g - 1; ++di) {
                for (int dj = -(g - 1); dj <= g - 1; ++dj) {
                    for (int dk = -(g - 1); dk <= g - 1; ++dk) {
                        const std::int64_t idx =
                            (di + g - 1) * d2 + static_cast<std::int64_t>(dj + g - 1) * dim + (dk + g - 1);
                        if (di == 0 && dj == 0 && dk == 0) {
                            t.values[idx] = 0.0; // pair sums skip the diagonal through this zero
                        } else {
                            t.values[idx] = kernel({di * h, dj * h, dk * h});
                        }
                    }
                }
            }
        });
}

std::optional<OffsetTable> build_offset_table_vec(const BallMesh& mesh,
                                                  const std::function<Vec3(Vec3)>& kernel,
                                                  std::size_t max_bytes) {
    const double h = mesh.spacing;
    return build_offset_table_common(
        mesh, 3 * sizeof(double), max_bytes, [&](OffsetTable& t, std::size_t entries, int dim, int g) {
            t.vx.assign(entries, 0.0);
            t.vy.assign(entries, 0.0);
            t.vz.assign(entries, 0.0);
            const std::int64_t d2 = static_cast<std::int64_t>(dim) * dim;
#pragma omp parallel for schedule(static)
            for (int di = -(g - 1); di <= g - 1; ++di) {
                for (int dj = -(g - 1); dj <= g - 1; ++dj) {
                    for (int dk = -(g - 1); dk <= g - 1; ++dk) {
                        const std::int64_t idx =
                            (di + g - 1) * d2 + static_cast<std::int64_t>(dj + g - 1) * dim + (dk + g - 1);
                        if (di == 0 && dj == 0 && dk == 0) continue;
                        const Vec3 v = kernel({di * h, dj * h, dk * h});
                        t.vx[idx] = v.x;
                        t.vy[idx] = v.y;
                        t.vz[idx] = v.z;
                    }
                }
            }
        });
}

PairTable::PairTable(const BallMesh& mesh, std::function<double(Vec3)> kernel,
                     std::size_t max_cache_bytes)
    : mesh_(&mesh), kernel_(std::move(kernel)) {
    table_ = build_offset_table(mesh, kernel_, max_cache_bytes);
    if (!table_ && mesh.has_grid) {
        static std::once_flag warned;
        std::call_once(warned, [] {
            std::fprintf(stderr,
                         "micromag: pair table exceeds the cache budget; "
                         "kernel values will be recomputed on the fly\n");
        });
    }
}

std::size_t PairTable::pair_count() const {
    const std::size_t n = mesh_->cell_count();
    return n * (n - 1) / 2;
}

double PairTable::kernel_value(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (table_) return table_->values[table_->index(i, j)];
    return kernel_(mesh_->offset(i, j));
}

void PairTable::for_each_pair(
    const std::function<void(std::size_t, std::size_t, Vec3, double)>& fn) const {
    const std::size_t n = mesh_->cell_count();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec3 off = mesh_->offset(i, j);
            fn(i, j, off, kernel_value(i, j));
        }
}

double tree_sum(const double* data, std::size_t n) {
    if (n == 0) return 0.0;
    if (n == 1) return data[0];
    const std::size_t half = n / 2;
    return tree_sum(data, half) + tree_sum(data + half, n - half);
}

double tree_sum(const std::vector<double>& data) { return tree_sum(data.data(), data.size()); }

namespace {
Vec3 tree_sum_vec(const Vec3* data, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return data[0];
    const std::size_t half = n / 2;
    return tree_sum_vec(data, half) + tree_sum_vec(data + half, n - half);
}
} // namespace

Vec3 tree_sum(const std::vector<Vec3>& data) { return tree_sum_vec(data.data(), data.size()); }

} // namespace micromag
