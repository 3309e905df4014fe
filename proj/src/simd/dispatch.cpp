// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "micromag/simd/pair_kernels.hpp"

namespace micromag::simd {

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::avx2: return "avx2";
        case Isa::scalar: break;
    }
    return "scalar";
}

namespace {

Isa select_isa() {
    if (const char* env = std::getenv("MICROMAG_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0) {
            if (avx2_available()) return Isa::avx2;
            std::fprintf(stderr, "micromag: MICROMAG_SIMD=avx2 requested but the CPU lacks "
                                 "avx2+fma; using scalar kernels\n");
            return Isa::scalar;
        }
        std::fprintf(stderr, "micromag: unknown MICROMAG_SIMD value '%s' ignored\n", env);
    }
    return avx2_available() ? Isa::avx2 : Isa::scalar;
}

} // namespace

Isa active_isa() {
    static const Isa isa = select_isa();
    return isa;
}

const PairKernels& active_kernels() {
    return active_isa() == Isa::avx2 ? avx2_kernels() : scalar_kernels();
}

} // namespace micromag::simd
