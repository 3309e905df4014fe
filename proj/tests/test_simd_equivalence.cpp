// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
//
// The AVX2 variants must agree with the scalar reference kernels on random
// inputs to reassociation-level tolerance. Sizes are deliberately not
// multiples of the vector width so the tail paths are exercised.
#include <cmath>
#include <vector>

#include <doctest.h>

#include "micromag/geometry.hpp"
#include "micromag/kernels.hpp"
#include "micromag/rng.hpp"
#include "micromag/simd/pair_kernels.hpp"

using namespace micromag;

namespace {

struct RandomSystem {
    std::vector<double> xs, ys, zs, mx, my, mz;
    std::size_t n;
    explicit RandomSystem(std::size_t n_, std::uint64_t seed) : n(n_) {
        Rng rng(seed);
        xs.resize(n);
        ys.resize(n);
        zs.resize(n);
        mx.resize(n);
        my.resize(n);
        mz.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = rng.uniform(-1.0, 1.0);
            ys[i] = rng.uniform(-1.0, 1.0);
            zs[i] = rng.uniform(-1.0, 1.0);
            const Vec3 u = rng.unit_vector();
            mx[i] = u.x;
            my[i] = u.y;
            mz[i] = u.z;
        }
    }
};

void check_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::abs(a[i]) + std::abs(b[i]) + 1.0;
        CHECK(std::abs(a[i] - b[i]) <= tol * scale);
    }
}

} // namespace

TEST_CASE("dispatch reports a valid ISA") {
    const simd::Isa isa = simd::active_isa();
    CHECK((isa == simd::Isa::scalar || isa == simd::Isa::avx2));
    if (isa == simd::Isa::avx2) CHECK(simd::avx2_available());
    CHECK(simd::isa_name(isa) != nullptr);
}

TEST_CASE("avx2 dipole field matches the scalar reference") {
    if (!simd::avx2_available()) return;
    const RandomSystem sys(523, 11);
    std::vector<double> hx_s(sys.n), hy_s(sys.n), hz_s(sys.n);
    std::vector<double> hx_v(sys.n), hy_v(sys.n), hz_v(sys.n);
    simd::scalar_kernels().dipole_field_rows(sys.xs.data(), sys.ys.data(), sys.zs.data(),
                                             sys.mx.data(), sys.my.data(), sys.mz.data(), sys.n, 0,
                                             sys.n, hx_s.data(), hy_s.data(), hz_s.data());
    simd::avx2_kernels().dipole_field_rows(sys.xs.data(), sys.ys.data(), sys.zs.data(),
                                           sys.mx.data(), sys.my.data(), sys.mz.data(), sys.n, 0,
                                           sys.n, hx_v.data(), hy_v.data(), hz_v.data());
    check_close(hx_s, hx_v, 1e-11);
    check_close(hy_s, hy_v, 1e-11);
    check_close(hz_s, hz_v, 1e-11);
}

TEST_CASE("avx2 exchange energy and gradient match the scalar reference") {
    if (!simd::avx2_available()) return;
    const BallMesh mesh = build_ball_mesh(0.7, 0.1);
    const Kernel kernel = make_builtin_kernel(BuiltinKernel::truncated_fractional, {.s = 0.5});
    const auto table = build_offset_table(mesh, kernel.evaluator);
    REQUIRE(table.has_value());

    const std::size_t n = mesh.cell_count();
    RandomSystem sys(n, 5);

    std::vector<double> e_s(n), e_v(n);
    simd::scalar_kernels().exchange_row_energy(table->values.data(), table->code.data(),
                                               table->bias, sys.mx.data(), sys.my.data(),
                                               sys.mz.data(), n, 0, n, e_s.data());
    simd::avx2_kernels().exchange_row_energy(table->values.data(), table->code.data(), table->bias,
                                             sys.mx.data(), sys.my.data(), sys.mz.data(), n, 0, n,
                                             e_v.data());
    check_close(e_s, e_v, 1e-11);

    std::vector<double> gx_s(n), gy_s(n), gz_s(n), gx_v(n), gy_v(n), gz_v(n);
    simd::scalar_kernels().exchange_row_gradient(table->values.data(), table->code.data(),
                                                 table->bias, sys.mx.data(), sys.my.data(),
                                                 sys.mz.data(), n, 0, n, gx_s.data(), gy_s.data(),
                                                 gz_s.data());
    simd::avx2_kernels().exchange_row_gradient(table->values.data(), table->code.data(),
                                               table->bias, sys.mx.data(), sys.my.data(),
                                               sys.mz.data(), n, 0, n, gx_v.data(), gy_v.data(),
                                               gz_v.data());
    check_close(gx_s, gx_v, 1e-11);
    check_close(gy_s, gy_v, 1e-11);
    check_close(gz_s, gz_v, 1e-11);
}

TEST_CASE("row-range split reproduces the full-range result") {
    const RandomSystem sys(101, 23);
    std::vector<double> full_x(sys.n), full_y(sys.n), full_z(sys.n);
    std::vector<double> split_x(sys.n), split_y(sys.n), split_z(sys.n);
    const auto& k = simd::scalar_kernels();
    k.dipole_field_rows(sys.xs.data(), sys.ys.data(), sys.zs.data(), sys.mx.data(), sys.my.data(),
                        sys.mz.data(), sys.n, 0, sys.n, full_x.data(), full_y.data(), full_z.data());
    for (std::size_t i = 0; i < sys.n; i += 7)
        k.dipole_field_rows(sys.xs.data(), sys.ys.data(), sys.zs.data(), sys.mx.data(),
                            sys.my.data(), sys.mz.data(), sys.n, i, std::min(i + 7, sys.n),
                            split_x.data(), split_y.data(), split_z.data());
    for (std::size_t i = 0; i < sys.n; ++i) {
        CHECK(full_x[i] == split_x[i]);
        CHECK(full_y[i] == split_y[i]);
        CHECK(full_z[i] == split_z[i]);
    }
}

TEST_CASE("zero-distance pairs are skipped in the dipole sum") {
    // the self pair contributes nothing; the far source acts alone
    std::vector<double> xs{0.0, 1.0}, ys{0.0, 0.0}, zs{0.0, 0.0};
    std::vector<double> mx{0.0, 0.0}, my{0.0, 0.0}, mz{1.0, 1.0};
    std::vector<double> hx(2), hy(2), hz(2);
    simd::scalar_kernels().dipole_field_rows(xs.data(), ys.data(), zs.data(), mx.data(), my.data(),
                                             mz.data(), 2, 0, 2, hx.data(), hy.data(), hz.data());
    // target 0: source 1 at distance 1 along x, m = e3 -> field = -e3 (3(m.r)r - m with m.r=0)
    CHECK(hx[0] == doctest::Approx(0.0));
    CHECK(hz[0] == doctest::Approx(-1.0).epsilon(1e-14));
}
