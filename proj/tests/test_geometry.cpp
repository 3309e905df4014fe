// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <set>

#include <doctest.h>

#include "micromag/errors.hpp"
#include "micromag/geometry.hpp"
#include "micromag/kernels.hpp"
#include "micromag/rng.hpp"

using namespace micromag;

TEST_CASE("ball mesh volume converges and centers stay inside") {
    const double exact = 4.0 / 3.0 * M_PI;

    const BallMesh coarse = build_ball_mesh(1.0, 0.25);
    CHECK(std::abs(coarse.total_volume() - exact) / exact < 0.10);

    const BallMesh fine = build_ball_mesh(1.0, 0.05);
    CHECK(std::abs(fine.total_volume() - exact) / exact < 0.015);

    for (const Vec3& c : fine.centers) CHECK(c.norm() < 1.0);

    // no duplicate lattice sites
    std::set<std::tuple<int, int, int>> seen;
    for (std::size_t i = 0; i < coarse.cell_count(); ++i)
        CHECK(seen.insert({coarse.ci[i], coarse.cj[i], coarse.ck[i]}).second);

    CHECK_THROWS_AS(build_ball_mesh(1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(build_ball_mesh(1.0, 1.5), InvalidArgument);
    CHECK_THROWS_AS(build_ball_mesh(-1.0, 0.1), InvalidArgument);
}

TEST_CASE("mesh refinement drives the volume error down") {
    const double exact = 4.0 / 3.0 * M_PI;
    double prev = 1e9;
    for (double h : {0.4, 0.2, 0.1, 0.05}) {
        const BallMesh mesh = build_ball_mesh(1.0, h);
        const double err = std::abs(mesh.total_volume() - exact) / exact;
        CHECK(err <= prev);
        prev = err;
    }
}

TEST_CASE("sphere quadrature integrates low moments to spectral accuracy") {
    const double R = 1.3;
    const SphereQuadrature quad = build_sphere_quadrature(R, 16);
    const double area = 4.0 * M_PI * R * R;
    CHECK(quad.total_weight() == doctest::Approx(area).epsilon(1e-10));

    double x1 = 0, x2 = 0, m1 = 0, m2 = 0, m3 = 0;
    for (std::size_t i = 0; i < quad.node_count(); ++i) {
        const Vec3 p = quad.points[i];
        const double w = quad.weights[i];
        x1 += w * p.z;               // odd moment
        x2 += w * p.z * p.z;         // (4 pi / 3) R^4
        m1 += w * p.x * p.x;
        m2 += w * p.y * p.y;
        m3 += w * p.z * p.z;
        CHECK((quad.normals[i] - p / R).norm() < 1e-12);
    }
    CHECK(std::abs(x1) < 1e-12 * area);
    CHECK(x2 == doctest::Approx(4.0 * M_PI / 3.0 * std::pow(R, 4)).epsilon(1e-10));
    CHECK(m1 == doctest::Approx(m3).epsilon(1e-10));
    CHECK(m2 == doctest::Approx(m3).epsilon(1e-10));

    CHECK_THROWS_AS(build_sphere_quadrature(1.0, 4), InvalidArgument);
}

TEST_CASE("hemisphere quadrature covers the upper half") {
    const SphereQuadrature upper = build_hemisphere_quadrature(1.0, 16);
    CHECK(upper.total_weight() == doctest::Approx(2.0 * M_PI).epsilon(1e-10));
    for (const Vec3& p : upper.points) CHECK(p.z > 0.0);
}

TEST_CASE("pair table: counts, exact offsets, cached kernel values") {
    const BallMesh mesh = build_ball_mesh(0.6, 0.15);
    const Kernel kernel = make_builtin_kernel(BuiltinKernel::gaussian4);
    PairTable table(mesh, kernel.evaluator);
    const std::size_t n = mesh.cell_count();
    CHECK(table.pair_count() == n * (n - 1) / 2);
    CHECK(table.cached());

    // cached values equal direct evaluation, bitwise, on random pairs
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        const auto i = static_cast<std::size_t>(rng.uniform() * n);
        auto j = static_cast<std::size_t>(rng.uniform() * n);
        if (i == j) j = (j + 1) % n;
        CHECK(table.kernel_value(i, j) == kernel.evaluator(mesh.offset(i, j)));
    }

    std::size_t visited = 0;
    table.for_each_pair([&](std::size_t i, std::size_t j, Vec3 off, double v) {
        ++visited;
        CHECK(i < j);
        CHECK(v == kernel.evaluator(off));
    });
    CHECK(visited == table.pair_count());
}

TEST_CASE("pair table on two handcrafted cells") {
    const BallMesh mesh = BallMesh::from_centers({{0, 0, 0}, {0.5, 0, 0}}, 0.1, 1.0);
    PairTable table(mesh, [](Vec3 z) { return 1.0 / z.norm2(); });
    CHECK(table.pair_count() == 1);
    CHECK_FALSE(table.cached()); // no lattice: evaluated on the fly
    CHECK(table.kernel_value(0, 1) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(table.distance(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("offset table respects the memory budget with a fallback") {
    const BallMesh mesh = build_ball_mesh(1.0, 0.2);
    const Kernel kernel = make_builtin_kernel(BuiltinKernel::gaussian4);
    PairTable table(mesh, kernel.evaluator, /*max_cache_bytes=*/1024);
    CHECK_FALSE(table.cached());
    // still correct on the fly
    CHECK(table.kernel_value(0, 1) == kernel.evaluator(mesh.offset(0, 1)));
}

TEST_CASE("tree sum is order-deterministic and accurate") {
    std::vector<double> data(1001);
    Rng rng(3);
    for (auto& v : data) v = rng.uniform(-1.0, 1.0);
    const double a = tree_sum(data);
    const double b = tree_sum(data);
    CHECK(a == b);
    long double ref = 0.0;
    for (double v : data) ref += v;
    CHECK(a == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
}
