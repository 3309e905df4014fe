// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>

namespace micromag::simd {

/// The O(N^2) inner loops of the nonlocal pair sums, written once as scalar
/// reference kernels and once with AVX2 intrinsics. The active variant is
/// selected at runtime from CPU features (override with MICROMAG_SIMD=scalar
/// or =avx2). Row-range signatures let callers parallelize over targets; each
/// output element is written by exactly one row, so results are deterministic
/// for a fixed variant regardless of thread count.
struct PairKernels {
    /// Dipole pair field, no prefactor, no weights:
    ///   out[i] = sum_{j : x_j != x_i} ( 3 (m_j . rhat) rhat - m_j ) / |r|^3,
    /// r = x_i - x_j, for i in [i_begin, i_end). Self pairs (r = 0) are skipped.
    void (*dipole_field_rows)(const double* xs, const double* ys, const double* zs,
                              const double* mx, const double* my, const double* mz,
                              std::size_t n, std::size_t i_begin, std::size_t i_end,
                              double* hx, double* hy, double* hz);

    /// Exchange row energies against the offset-class table:
    ///   e[i] = sum_j jtab[bias + code[i] - code[j]] * |m_i - m_j|^2.
    /// The zero-offset entry of jtab is 0, which silently drops j == i.
    void (*exchange_row_energy)(const double* jtab, const std::int32_t* code, std::int64_t bias,
                                const double* mx, const double* my, const double* mz,
                                std::size_t n, std::size_t i_begin, std::size_t i_end, double* e);

    /// Exchange row gradients (the caller applies the 4 w^2 factor):
    ///   g[i] = sum_j jtab[bias + code[i] - code[j]] * (m_i - m_j).
    void (*exchange_row_gradient)(const double* jtab, const std::int32_t* code, std::int64_t bias,
                                  const double* mx, const double* my, const double* mz,
                                  std::size_t n, std::size_t i_begin, std::size_t i_end,
                                  double* gx, double* gy, double* gz);
};

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa);

const PairKernels& scalar_kernels();
bool avx2_available();
const PairKernels& avx2_kernels(); // call only when avx2_available()

/// Variant selected once per process; stable for the lifetime of the run.
Isa active_isa();
const PairKernels& active_kernels();

} // namespace micromag::simd
