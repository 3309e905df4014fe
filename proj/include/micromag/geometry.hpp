// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "micromag/vec3.hpp"

namespace micromag {

/// Uniform voxelization of the ball B_R: cell centers of a cubic lattice of
/// spacing h, offset by h/2 so the origin is never a center, restricted to
/// |center| < R. All cells carry the same weight h^3.
///
/// Centers are kept both as Vec3 (AoS) and as SoA arrays for the pair-sum
/// compute kernels. Integer lattice coordinates make pair offsets exact:
/// offset(i,j) = (coord_i - coord_j) * h componentwise, so every pair in the
/// same offset class sees the bit-identical displacement vector.
struct BallMesh {
    double radius = 0.0;
    double spacing = 0.0;
    double cell_weight = 0.0; // h^3 (or explicit weight for handcrafted meshes)
    int grid_n = 0;           // lattice index range [-grid_n, grid_n-1]
    bool has_grid = false;    // false for handcrafted test meshes

    std::vector<Vec3> centers;
    std::vector<double> xs, ys, zs;                 // SoA mirror of centers
    std::vector<std::int32_t> ci, cj, ck;           // lattice coords per cell
    std::vector<std::int32_t> cell_of_grid;         // dense lookup, -1 = empty

    std::size_t cell_count() const { return centers.size(); }
    double total_volume() const { return cell_weight * static_cast<double>(cell_count()); }
    int grid_dim() const { return 2 * grid_n; }

    /// Cell id at lattice coords, -1 if absent or out of range.
    int cell_at(int i, int j, int k) const {
        const int g = grid_dim();
        const int gi = i + grid_n, gj = j + grid_n, gk = k + grid_n;
        if (gi < 0 || gi >= g || gj < 0 || gj >= g || gk < 0 || gk >= g) return -1;
        return cell_of_grid[(static_cast<std::size_t>(gi) * g + gj) * g + gk];
    }

    /// Exact pair displacement x_i - x_j from integer lattice coords.
    Vec3 offset(std::size_t i, std::size_t j) const {
        if (has_grid)
            return {(ci[i] - ci[j]) * spacing, (cj[i] - cj[j]) * spacing,
                    (ck[i] - ck[j]) * spacing};
        return centers[i] - centers[j];
    }

    /// Handcrafted mesh for tests and tools (no lattice structure).
    static BallMesh from_centers(std::vector<Vec3> centers, double weight_each, double radius);
};

/// Builds the voxel mesh. Throws InvalidArgument unless 0 < h < R and
/// MeshTooCoarse when fewer than 8 cells result.
BallMesh build_ball_mesh(double R, double h);

/// Product quadrature on the sphere (or upper hemisphere) of radius R:
/// Gauss-Legendre in cos(theta) x uniform trapezoid in phi with 2*n_theta
/// azimuthal nodes.
struct SphereQuadrature {
    double radius = 0.0;
    int n_theta = 0;
    bool hemisphere = false; // true: restricted to x3 >= 0
    std::vector<Vec3> points;
    std::vector<Vec3> normals; // outward unit normals, point/R
    std::vector<double> weights;

    std::size_t node_count() const { return points.size(); }
    double total_weight() const;
};

SphereQuadrature build_sphere_quadrature(double R, int n_theta);
SphereQuadrature build_hemisphere_quadrature(double R, int n_theta);

/// Kernel values cached per lattice offset class. The table is indexed by
/// code(i) - code(j) + bias with code = packed lattice coords, so a lookup
/// is one integer subtract plus a load. The center entry (zero offset) is
/// stored as 0.0: pair sums may then run over all j including j == i.
struct OffsetTable {
    int dim = 0;                       // 2*grid_dim - 1 per axis
    std::int32_t bias = 0;             // index of the zero offset
    std::vector<std::int32_t> code;    // packed lattice coords per cell
    std::vector<double> values;        // scalar kernel values (size dim^3)
    std::vector<double> vx, vy, vz;    // vector kernel values (optional)

    std::int64_t index(std::size_t i, std::size_t j) const {
        return static_cast<std::int64_t>(bias) + code[i] - code[j];
    }
};

/// Builds the scalar offset table for j(offset). Returns nullopt when the
/// mesh has no lattice structure or the table would exceed max_bytes.
std::optional<OffsetTable> build_offset_table(const BallMesh& mesh,
                                              const std::function<double(Vec3)>& kernel,
                                              std::size_t max_bytes = std::size_t(256) << 20);

/// Vector-kernel variant (used by the antisymmetric exchange term).
std::optional<OffsetTable> build_offset_table_vec(const BallMesh& mesh,
                                                  const std::function<Vec3(Vec3)>& kernel,
                                                  std::size_t max_bytes = std::size_t(256) << 20);

/// Precomputed interaction structure over unordered cell pairs. Wraps the
/// offset-class cache; when the cache is unavailable (handcrafted mesh or
/// memory budget exceeded) evaluation falls back to calling the kernel on
/// the fly, with a one-time warning rather than an error.
class PairTable {
  public:
    PairTable(const BallMesh& mesh, std::function<double(Vec3)> kernel,
              std::size_t max_cache_bytes = std::size_t(256) << 20);

    std::size_t pair_count() const; // N(N-1)/2
    bool cached() const { return table_.has_value(); }

    Vec3 offset(std::size_t i, std::size_t j) const { return mesh_->offset(i, j); }
    double distance(std::size_t i, std::size_t j) const { return offset(i, j).norm(); }

    /// Kernel value for an (i, j) pair; reads the cache when present.
    double kernel_value(std::size_t i, std::size_t j) const;

    /// Visits every unordered pair (i < j).
    void for_each_pair(const std::function<void(std::size_t, std::size_t, Vec3, double)>& fn) const;

    const OffsetTable* offset_table() const { return table_ ? &*table_ : nullptr; }

  private:
    const BallMesh* mesh_;
    std::function<double(Vec3)> kernel_;
    std::optional<OffsetTable> table_;
};

/// Deterministic pairwise tree sum; the result does not depend on thread
/// count because inputs are reduced in fixed index order.
double tree_sum(const double* data, std::size_t n);
double tree_sum(const std::vector<double>& data);
Vec3 tree_sum(const std::vector<Vec3>& data);

} // namespace micromag
