// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "micromag/geometry.hpp"
#include "micromag/vec3.hpp"

namespace micromag {

/// S^2-valued field on a BallMesh, stored as SoA component arrays so the
/// pair-sum kernels can consume it directly. Constructors enforce the
/// unit-norm constraint to 1e-12.
struct Magnetization {
    const BallMesh* mesh = nullptr;
    std::vector<double> x, y, z;

    std::size_t size() const { return x.size(); }
    Vec3 get(std::size_t i) const { return {x[i], y[i], z[i]}; }
    void set(std::size_t i, const Vec3& v) {
        x[i] = v.x;
        y[i] = v.y;
        z[i] = v.z;
    }
    std::vector<Vec3> as_vectors() const;

    static Magnetization zeros(const BallMesh& mesh);
    /// Wraps raw values; throws unless every entry is unit within 1e-12.
    static Magnetization from_vectors(const BallMesh& mesh, const std::vector<Vec3>& values);
};

Magnetization constant_field(const BallMesh& mesh, const Vec3& sigma);

/// The explicit vortex configuration on B_R:
///   m = ( -x2/R * sqrt(2 - |x_perp|^2/R^2),
///          x1/R * sqrt(2 - |x_perp|^2/R^2),
///          1 - |x_perp|^2/R^2 ).
/// Unit-norm by construction; values are defensively renormalized and the
/// pre-normalization deviation is checked against 1e-12.
Magnetization vortex_field(const BallMesh& mesh);

/// Same formula pinned to R = 1; throws unless mesh.radius == 1 (1e-12).
Magnetization rescaled_vortex_field(const BallMesh& unit_mesh);

/// I.i.d. uniform directions on S^2, reproducible from the seed.
Magnetization random_unit_field(const BallMesh& mesh, std::uint64_t seed);

/// Volume-weighted mean <m>.
Vec3 mean(const Magnetization& m);

/// 1 - |<m>|^2, in [0,1]. Also verifies the exact discrete identity
/// ||m - <m>||^2 = (sum w)(1 - |<m>|^2) to 1e-10 relative.
double uniformity_deficit(const Magnetization& m);

struct DivergenceField {
    std::vector<double> values;
    double l2_norm = 0.0;          // volume-weighted, all cells
    double l2_norm_interior = 0.0; // cells with all six lattice neighbors
    std::size_t interior_cells = 0;
};

/// Central differences on interior cells, one-sided at the discrete boundary.
DivergenceField discrete_divergence(const Magnetization& m);

struct H1Norm {
    double total = 0.0;
    double l2_part = 0.0;
    double gradient_part = 0.0;
};

/// ||m_vortex||^2_{H^1(B_1)} with the gradient taken from the closed-form
/// partial derivatives (|grad m|^2_F = 4 + rho^4 / (2 - rho^2), rho = |x_perp|),
/// not finite differences.
H1Norm h1_norm_vortex(const BallMesh& unit_mesh);

/// CSV round-trip: rows of x,y,z,m1,m2,m3,weight at full double precision.
void save_field_csv(const std::string& path, const Magnetization& m);

struct LoadedField {
    std::vector<Vec3> centers;
    std::vector<Vec3> values;
    std::vector<double> weights;
};
LoadedField load_field_csv(const std::string& path);

/// Gnuplot-ready vector slice of the equatorial plane (cells nearest z = 0).
void write_equatorial_slice(const Magnetization& m, const std::string& dat_path,
                            const std::string& gp_path);

} // namespace micromag
