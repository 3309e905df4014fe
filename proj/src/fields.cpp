// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#include "micromag/fields.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "micromag/errors.hpp"
#include "micromag/rng.hpp"

namespace micromag {

std::vector<Vec3> Magnetization::as_vectors() const {
    std::vector<Vec3> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = get(i);
    return out;
}

Magnetization Magnetization::zeros(const BallMesh& mesh) {
    Magnetization m;
    m.mesh = &mesh;
    m.x.assign(mesh.cell_count(), 0.0);
    m.y.assign(mesh.cell_count(), 0.0);
    m.z.assign(mesh.cell_count(), 0.0);
    return m;
}

Magnetization Magnetization::from_vectors(const BallMesh& mesh, const std::vector<Vec3>& values) {
    if (values.size() != mesh.cell_count())
        throw InvalidArgument("Magnetization: value count does not match the mesh");
    Magnetization m = zeros(mesh);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (std::abs(values[i].norm() - 1.0) > 1e-12)
            throw InvalidArgument("Magnetization: values must be unit vectors");
        m.set(i, values[i]);
    }
    return m;
}

Magnetization constant_field(const BallMesh& mesh, const Vec3& sigma) {
    if (std::abs(sigma.norm() - 1.0) > 1e-12)
        throw InvalidArgument("constant_field: sigma must be a unit vector");
    Magnetization m = Magnetization::zeros(mesh);
    for (std::size_t i = 0; i < mesh.cell_count(); ++i) m.set(i, sigma);
    return m;
}

Magnetization vortex_field(const BallMesh& mesh) {
    const double R = mesh.radius;
    Magnetization m = Magnetization::zeros(mesh);
    for (std::size_t i = 0; i < mesh.cell_count(); ++i) {
        const Vec3 p = mesh.centers[i];
        const double t = (p.x * p.x + p.y * p.y) / (R * R);
        const double g = std::sqrt(2.0 - t);
        Vec3 v{-p.y / R * g, p.x / R * g, 1.0 - t};
        const double n = v.norm();
        if (std::abs(n - 1.0) > 1e-12)
            throw std::logic_error("vortex_field: construction left a non-unit value");
        m.set(i, v / n);
    }
    return m;
}

Magnetization rescaled_vortex_field(const BallMesh& unit_mesh) {
    if (std::abs(unit_mesh.radius - 1.0) > 1e-12)
        throw InvalidArgument("rescaled_vortex_field: mesh radius must be 1");
    return vortex_field(unit_mesh);
}

Magnetization random_unit_field(const BallMesh& mesh, std::uint64_t seed) {
    Rng rng(seed);
    Magnetization m = Magnetization::zeros(mesh);
    for (std::size_t i = 0; i < mesh.cell_count(); ++i) m.set(i, rng.unit_vector());
    return m;
}

Vec3 mean(const Magnetization& m) {
    // uniform weights cancel; keep the weighted form for clarity
    std::vector<Vec3> terms(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) terms[i] = m.get(i);
    const Vec3 s = tree_sum(terms);
    return s / static_cast<double>(m.size());
}

double uniformity_deficit(const Magnetization& m) {
    const Vec3 avg = mean(m);
    const double deficit = 1.0 - avg.norm2();
    // discrete identity ||m - <m>||^2 = (sum w)(1 - |<m>|^2), exact for unit fields
    const double w = m.mesh->cell_weight;
    std::vector<double> terms(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) terms[i] = w * (m.get(i) - avg).norm2();
    const double lhs = tree_sum(terms);
    const double volume = w * static_cast<double>(m.size());
    const double rhs = volume * deficit;
    // the identity is exact for unit fields; the floor covers the volume-scale
    // round-off left when the deficit itself sits at machine zero
    const double scale = std::max({std::abs(lhs), std::abs(rhs), volume * 1e-4});
    if (std::abs(lhs - rhs) > 1e-10 * scale)
        throw std::logic_error("uniformity_deficit: discrete variance identity violated");
    return deficit;
}

DivergenceField discrete_divergence(const Magnetization& m) {
    const BallMesh& mesh = *m.mesh;
    if (!mesh.has_grid)
        throw Unsupported("discrete_divergence: mesh has no lattice structure");
    const double h = mesh.spacing;
    DivergenceField out;
    out.values.assign(m.size(), 0.0);

    const auto component = [&](std::size_t cell, int axis) {
        switch (axis) {
            case 0: return m.x[cell];
            case 1: return m.y[cell];
            default: return m.z[cell];
        }
    };

    std::vector<double> l2_terms(m.size(), 0.0);
    std::vector<double> l2_int_terms;
    l2_int_terms.reserve(m.size());
    const double w = mesh.cell_weight;
    for (std::size_t c = 0; c < m.size(); ++c) {
        const int i = mesh.ci[c], j = mesh.cj[c], k = mesh.ck[c];
        double div = 0.0;
        bool interior = true;
        for (int axis = 0; axis < 3; ++axis) {
            const int di = axis == 0, dj = axis == 1, dk = axis == 2;
            const int fwd = mesh.cell_at(i + di, j + dj, k + dk);
            const int bwd = mesh.cell_at(i - di, j - dj, k - dk);
            if (fwd >= 0 && bwd >= 0) {
                div += (component(fwd, axis) - component(bwd, axis)) / (2.0 * h);
            } else if (fwd >= 0) {
                div += (component(fwd, axis) - component(c, axis)) / h;
                interior = false;
            } else if (bwd >= 0) {
                div += (component(c, axis) - component(bwd, axis)) / h;
                interior = false;
            } else {
                interior = false; // isolated along this axis; no contribution
            }
        }
        out.values[c] = div;
        l2_terms[c] = w * div * div;
        if (interior) l2_int_terms.push_back(w * div * div);
    }
    out.l2_norm = std::sqrt(tree_sum(l2_terms));
    out.l2_norm_interior = std::sqrt(tree_sum(l2_int_terms));
    out.interior_cells = l2_int_terms.size();
    return out;
}

H1Norm h1_norm_vortex(const BallMesh& unit_mesh) {
    if (std::abs(unit_mesh.radius - 1.0) > 1e-12)
        throw InvalidArgument("h1_norm_vortex: mesh radius must be 1");
    const Magnetization m = vortex_field(unit_mesh);
    const double w = unit_mesh.cell_weight;
    std::vector<double> l2_terms(m.size()), grad_terms(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Vec3 p = unit_mesh.centers[i];
        const double rho2 = p.x * p.x + p.y * p.y;
        l2_terms[i] = w * m.get(i).norm2();
        grad_terms[i] = w * (4.0 + rho2 * rho2 / (2.0 - rho2));
    }
    H1Norm out;
    out.l2_part = tree_sum(l2_terms);
    out.gradient_part = tree_sum(grad_terms);
    out.total = out.l2_part + out.gradient_part;
    return out;
}

void save_field_csv(const std::string& path, const Magnetization& m) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("save_field_csv: cannot open " + path);
    std::fprintf(f, "x,y,z,m1,m2,m3,weight\n");
    const double w = m.mesh->cell_weight;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Vec3 p = m.mesh->centers[i];
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", p.x, p.y, p.z, m.x[i],
                     m.y[i], m.z[i], w);
    }
    std::fclose(f);
}

LoadedField load_field_csv(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "r");
    if (!f) throw std::runtime_error("load_field_csv: cannot open " + path);
    LoadedField out;
    char line[512];
    bool header = true;
    while (std::fgets(line, sizeof line, f)) {
        if (header) {
            header = false;
            continue;
        }
        double v[7];
        char* p = line;
        bool ok = true;
        for (int c = 0; c < 7; ++c) {
            char* end = nullptr;
            v[c] = std::strtod(p, &end);
            if (end == p) {
                ok = false;
                break;
            }
            p = end;
            while (*p == ',' || *p == ' ') ++p;
        }
        if (!ok) continue;
        out.centers.push_back({v[0], v[1], v[2]});
        out.values.push_back({v[3], v[4], v[5]});
        out.weights.push_back(v[6]);
    }
    std::fclose(f);
    return out;
}

void write_equatorial_slice(const Magnetization& m, const std::string& dat_path,
                            const std::string& gp_path) {
    const BallMesh& mesh = *m.mesh;
    std::FILE* f = std::fopen(dat_path.c_str(), "w");
    if (!f) throw std::runtime_error("write_equatorial_slice: cannot open " + dat_path);
    std::fprintf(f, "# x y m1 m2 m3\n");
    const double half = 0.5 * mesh.spacing;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Vec3 p = mesh.centers[i];
        if (std::abs(p.z) > half) continue;
        std::fprintf(f, "%.10g %.10g %.10g %.10g %.10g\n", p.x, p.y, m.x[i], m.y[i], m.z[i]);
    }
    std::fclose(f);

    std::FILE* g = std::fopen(gp_path.c_str(), "w");
    if (!g) throw std::runtime_error("write_equatorial_slice: cannot open " + gp_path);
    std::fprintf(g,
                 "set size square\nset title 'equatorial slice'\n"
                 "scale = %.6g\n"
                 "plot '%s' using 1:2:($3*scale):($4*scale) with vectors head filled notitle\n",
                 0.8 * mesh.spacing, dat_path.c_str());
    std::fclose(g);
}

} // namespace micromag
