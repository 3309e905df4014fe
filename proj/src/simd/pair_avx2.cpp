// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
//
// AVX2/FMA variants of the pair-sum kernels, 4 doubles per lane over the
// source index j. Compiled with per-function target attributes so the rest
// of the translation unit stays portable; the dispatcher only hands these
// out when the CPU reports avx2+fma.
#include "micromag/simd/pair_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#include <cmath>

namespace micromag::simd {

namespace {

#define MICROMAG_AVX2 __attribute__((target("avx2,fma")))

MICROMAG_AVX2 inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

MICROMAG_AVX2 void dipole_field_rows_avx2(const double* xs, const double* ys, const double* zs,
                                          const double* mx, const double* my, const double* mz,
                                          std::size_t n, std::size_t i_begin, std::size_t i_end,
                                          double* hx, double* hy, double* hz) {
    const std::size_t n4 = n & ~std::size_t(3);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d three = _mm256_set1_pd(3.0);
    const __m256d zero = _mm256_setzero_pd();
    for (std::size_t i = i_begin; i < i_end; ++i) {
        const __m256d xi = _mm256_set1_pd(xs[i]);
        const __m256d yi = _mm256_set1_pd(ys[i]);
        const __m256d zi = _mm256_set1_pd(zs[i]);
        __m256d ax = zero, ay = zero, az = zero;
        for (std::size_t j = 0; j < n4; j += 4) {
            const __m256d rx = _mm256_sub_pd(xi, _mm256_loadu_pd(xs + j));
            const __m256d ry = _mm256_sub_pd(yi, _mm256_loadu_pd(ys + j));
            const __m256d rz = _mm256_sub_pd(zi, _mm256_loadu_pd(zs + j));
            __m256d r2 = _mm256_mul_pd(rx, rx);
            r2 = _mm256_fmadd_pd(ry, ry, r2);
            r2 = _mm256_fmadd_pd(rz, rz, r2);
            const __m256d live = _mm256_cmp_pd(r2, zero, _CMP_GT_OQ);
            // keep the self lane finite through sqrt/div, zero it afterwards
            const __m256d r2s = _mm256_blendv_pd(one, r2, live);
            const __m256d inv_r = _mm256_div_pd(one, _mm256_sqrt_pd(r2s));
            const __m256d inv_r2 = _mm256_mul_pd(inv_r, inv_r);
            const __m256d inv_r3 = _mm256_and_pd(_mm256_mul_pd(inv_r2, inv_r), live);
            const __m256d mxj = _mm256_loadu_pd(mx + j);
            const __m256d myj = _mm256_loadu_pd(my + j);
            const __m256d mzj = _mm256_loadu_pd(mz + j);
            __m256d mdotr = _mm256_mul_pd(mxj, rx);
            mdotr = _mm256_fmadd_pd(myj, ry, mdotr);
            mdotr = _mm256_fmadd_pd(mzj, rz, mdotr);
            const __m256d c = _mm256_mul_pd(three, _mm256_mul_pd(mdotr, inv_r2));
            ax = _mm256_fmadd_pd(inv_r3, _mm256_fmsub_pd(c, rx, mxj), ax);
            ay = _mm256_fmadd_pd(inv_r3, _mm256_fmsub_pd(c, ry, myj), ay);
            az = _mm256_fmadd_pd(inv_r3, _mm256_fmsub_pd(c, rz, mzj), az);
        }
        double sx = hsum(ax), sy = hsum(ay), sz = hsum(az);
        for (std::size_t j = n4; j < n; ++j) {
            const double rx = xs[i] - xs[j];
            const double ry = ys[i] - ys[j];
            const double rz = zs[i] - zs[j];
            const double r2 = rx * rx + ry * ry + rz * rz;
            if (r2 == 0.0) continue;
            const double inv_r = 1.0 / std::sqrt(r2);
            const double inv_r2 = inv_r * inv_r;
            const double inv_r3 = inv_r2 * inv_r;
            const double mdotr = mx[j] * rx + my[j] * ry + mz[j] * rz;
            const double c = 3.0 * mdotr * inv_r2;
            sx += inv_r3 * (c * rx - mx[j]);
            sy += inv_r3 * (c * ry - my[j]);
            sz += inv_r3 * (c * rz - mz[j]);
        }
        hx[i] = sx;
        hy[i] = sy;
        hz[i] = sz;
    }
}

MICROMAG_AVX2 void exchange_row_energy_avx2(const double* jtab, const std::int32_t* code,
                                            std::int64_t bias, const double* mx, const double* my,
                                            const double* mz, std::size_t n, std::size_t i_begin,
                                            std::size_t i_end, double* e) {
    const std::size_t n4 = n & ~std::size_t(3);
    for (std::size_t i = i_begin; i < i_end; ++i) {
        const auto base = static_cast<std::int32_t>(bias + code[i]);
        const __m128i base4 = _mm_set1_epi32(base);
        const __m256d mxi = _mm256_set1_pd(mx[i]);
        const __m256d myi = _mm256_set1_pd(my[i]);
        const __m256d mzi = _mm256_set1_pd(mz[i]);
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < n4; j += 4) {
            const __m128i idx =
                _mm_sub_epi32(base4, _mm_loadu_si128(reinterpret_cast<const __m128i*>(code + j)));
            const __m256d jv = _mm256_i32gather_pd(jtab, idx, 8);
            const __m256d dx = _mm256_sub_pd(mxi, _mm256_loadu_pd(mx + j));
            const __m256d dy = _mm256_sub_pd(myi, _mm256_loadu_pd(my + j));
            const __m256d dz = _mm256_sub_pd(mzi, _mm256_loadu_pd(mz + j));
            __m256d d2 = _mm256_mul_pd(dx, dx);
            d2 = _mm256_fmadd_pd(dy, dy, d2);
            d2 = _mm256_fmadd_pd(dz, dz, d2);
            acc = _mm256_fmadd_pd(jv, d2, acc);
        }
        double s = hsum(acc);
        for (std::size_t j = n4; j < n; ++j) {
            const double jv = jtab[bias + code[i] - code[j]];
            const double dx = mx[i] - mx[j];
            const double dy = my[i] - my[j];
            const double dz = mz[i] - mz[j];
            s += jv * (dx * dx + dy * dy + dz * dz);
        }
        e[i] = s;
    }
}

MICROMAG_AVX2 void exchange_row_gradient_avx2(const double* jtab, const std::int32_t* code,
                                              std::int64_t bias, const double* mx, const double* my,
                                              const double* mz, std::size_t n, std::size_t i_begin,
                                              std::size_t i_end, double* gx, double* gy,
                                              double* gz) {
    const std::size_t n4 = n & ~std::size_t(3);
    for (std::size_t i = i_begin; i < i_end; ++i) {
        const auto base = static_cast<std::int32_t>(bias + code[i]);
        const __m128i base4 = _mm_set1_epi32(base);
        const __m256d mxi = _mm256_set1_pd(mx[i]);
        const __m256d myi = _mm256_set1_pd(my[i]);
        const __m256d mzi = _mm256_set1_pd(mz[i]);
        __m256d ax = _mm256_setzero_pd(), ay = _mm256_setzero_pd(), az = _mm256_setzero_pd();
        for (std::size_t j = 0; j < n4; j += 4) {
            const __m128i idx =
                _mm_sub_epi32(base4, _mm_loadu_si128(reinterpret_cast<const __m128i*>(code + j)));
            const __m256d jv = _mm256_i32gather_pd(jtab, idx, 8);
            ax = _mm256_fmadd_pd(jv, _mm256_sub_pd(mxi, _mm256_loadu_pd(mx + j)), ax);
            ay = _mm256_fmadd_pd(jv, _mm256_sub_pd(myi, _mm256_loadu_pd(my + j)), ay);
            az = _mm256_fmadd_pd(jv, _mm256_sub_pd(mzi, _mm256_loadu_pd(mz + j)), az);
        }
        double sx = hsum(ax), sy = hsum(ay), sz = hsum(az);
        for (std::size_t j = n4; j < n; ++j) {
            const double jv = jtab[bias + code[i] - code[j]];
            sx += jv * (mx[i] - mx[j]);
            sy += jv * (my[i] - my[j]);
            sz += jv * (mz[i] - mz[j]);
        }
        gx[i] = sx;
        gy[i] = sy;
        gz[i] = sz;
    }
}

#undef MICROMAG_AVX2

} // namespace

bool avx2_available() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const PairKernels& avx2_kernels() {
    static const PairKernels k{dipole_field_rows_avx2, exchange_row_energy_avx2,
                               exchange_row_gradient_avx2};
    return k;
}

} // namespace micromag::simd

#else // non-x86 fallback: report unavailable

namespace micromag::simd {
bool avx2_available() { return false; }
const PairKernels& avx2_kernels() { return scalar_kernels(); }
} // namespace micromag::simd

#endif
