// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
//
// Scalar reference implementations of the pair-sum kernels. These define the
// semantics the SIMD variants are equivalence-tested against.
#include "micromag/simd/pair_kernels.hpp"

#include <cmath>

namespace micromag::simd {

namespace {

void dipole_field_rows_scalar(const double* xs, const double* ys, const double* zs,
                              const double* mx, const double* my, const double* mz, std::size_t n,
                              std::size_t i_begin, std::size_t i_end, double* hx, double* hy,
                              double* hz) {
    for (std::size_t i = i_begin; i < i_end; ++i) {
        const double xi = xs[i], yi = ys[i], zi = zs[i];
        double ax = 0.0, ay = 0.0, az = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double rx = xi - xs[j];
            const double ry = yi - ys[j];
            const double rz = zi - zs[j];
            const double r2 = rx * rx + ry * ry + rz * rz;
            if (r2 == 0.0) continue;
            const double inv_r = 1.0 / std::sqrt(r2);
            const double inv_r2 = inv_r * inv_r;
            const double inv_r3 = inv_r2 * inv_r;
            const double mdotr = mx[j] * rx + my[j] * ry + mz[j] * rz;
            const double c = 3.0 * mdotr * inv_r2;
            ax += inv_r3 * (c * rx - mx[j]);
            ay += inv_r3 * (c * ry - my[j]);
            az += inv_r3 * (c * rz - mz[j]);
        }
        hx[i] = ax;
        hy[i] = ay;
        hz[i] = az;
    }
}

void exchange_row_energy_scalar(const double* jtab, const std::int32_t* code, std::int64_t bias,
                                const double* mx, const double* my, const double* mz, std::size_t n,
                                std::size_t i_begin, std::size_t i_end, double* e) {
    for (std::size_t i = i_begin; i < i_end; ++i) {
        const std::int64_t base = bias + code[i];
        const double mxi = mx[i], myi = my[i], mzi = mz[i];
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double jv = jtab[base - code[j]];
            const double dx = mxi - mx[j];
            const double dy = myi - my[j];
            const double dz = mzi - mz[j];
            acc += jv * (dx * dx + dy * dy + dz * dz);
        }
        e[i] = acc;
    }
}

void exchange_row_gradient_scalar(const double* jtab, const std::int32_t* code, std::int64_t bias,
                                  const double* mx, const double* my, const double* mz,
                                  std::size_t n, std::size_t i_begin, std::size_t i_end, double* gx,
                                  double* gy, double* gz) {
    for (std::size_t i = i_begin; i < i_end; ++i) {
        const std::int64_t base = bias + code[i];
        const double mxi = mx[i], myi = my[i], mzi = mz[i];
        double ax = 0.0, ay = 0.0, az = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double jv = jtab[base - code[j]];
            ax += jv * (mxi - mx[j]);
            ay += jv * (myi - my[j]);
            az += jv * (mzi - mz[j]);
        }
        gx[i] = ax;
        gy[i] = ay;
        gz[i] = az;
    }
}

} // namespace

const PairKernels& scalar_kernels() {
    static const PairKernels k{dipole_field_rows_scalar, exchange_row_energy_scalar,
                               exchange_row_gradient_scalar};
    return k;
}

} // namespace micromag::simd
