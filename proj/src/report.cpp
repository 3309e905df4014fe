// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#include "micromag/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace micromag {

Kernel kernel_from_config(const KernelSection& s) {
    KernelParams params;
    params.s = s.s;
    params.gamma = s.gamma;
    params.amplitude = s.amplitude;
    params.tail = s.tail == "none" ? TruncationTail::none : TruncationTail::gaussian;
    Kernel kernel = make_builtin_kernel(s.name, params);
    if (s.j5_C > 0.0 || s.j5_s > 0.0 || s.j5_R0 > 0.0) {
        if (!(s.j5_C > 0.0) || !(s.j5_s > 0.0 && s.j5_s < 1.0) || !(s.j5_R0 > 0.0))
            throw ConfigError("config: kernel.j5_C, kernel.j5_s (in (0,1)) and kernel.j5_R0 "
                              "must all be set and positive to declare a lower bound");
        kernel.j5 = J5Params{s.j5_C, s.j5_s, s.j5_R0};
    }
    return kernel;
}

double mesh_spacing_from_config(const MeshSection& s) {
    if (s.h > 0.0) return s.h;
    if (s.cells_per_diameter < 2)
        throw ConfigError("config: mesh.cells_per_diameter must be >= 2 when mesh.h is unset");
    return 2.0 * s.R / s.cells_per_diameter;
}

namespace {
std::FILE* open_or_throw(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open output file " + path);
    return f;
}
} // namespace

void write_energy_csv(const std::string& path, const EnergyBreakdown& b) {
    std::FILE* f = open_or_throw(path);
    std::fprintf(f, "exchange,magnetostatic,anisotropy,dmi,total,mesh_h,kernel,pair_count\n");
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s,%zu\n", b.exchange, b.magnetostatic,
                 b.anisotropy, b.dmi, b.total, b.mesh_h, b.kernel_name.c_str(), b.pair_count);
    std::fclose(f);
}

void write_trace_csv(const std::string& path, const std::vector<IterRecord>& trace) {
    std::FILE* f = open_or_throw(path);
    std::fprintf(f, "iter,energy,grad_norm\n");
    for (const auto& row : trace)
        std::fprintf(f, "%d,%.17g,%.17g\n", row.iter, row.energy, row.grad_norm);
    std::fclose(f);
}

void write_sweep_csv(const std::string& path, const std::vector<RegimeSweepRow>& rows) {
    std::FILE* f = open_or_throw(path);
    std::fprintf(f, "R,best_energy,constant_energy,constant_energy_disc,deficit,classification,"
                    "restarts,best_init,note\n");
    for (const auto& r : rows)
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%s,%d,%s,%s\n", r.R, r.best_energy,
                     r.constant_energy, r.constant_energy_disc, r.deficit,
                     to_string(r.classification), r.restarts_used, r.best_init.c_str(),
                     r.note.c_str());
    std::fclose(f);
}

void write_tail_csv(const std::string& path, const std::vector<TailDecayEntry>& rows) {
    std::FILE* f = open_or_throw(path);
    std::fprintf(f, "R,tail_decay\n");
    for (const auto& r : rows) std::fprintf(f, "%.17g,%.17g\n", r.R, r.value);
    std::fclose(f);
}

void write_sweep_plots(const std::string& dir, const std::string& csv_name) {
    {
        std::FILE* f = open_or_throw(dir + "/sweep_energy.gp");
        std::fprintf(f,
                     "set datafile separator ','\n"
                     "set logscale x\n"
                     "set xlabel 'R'\nset ylabel 'energy'\n"
                     "plot '%s' using 1:2 with linespoints title 'best found', \\\n"
                     "     (4.0/9.0)*pi*x**3 with lines title 'constant reference'\n",
                     csv_name.c_str());
        std::fclose(f);
    }
    {
        std::FILE* f = open_or_throw(dir + "/sweep_deficit.gp");
        std::fprintf(f,
                     "set datafile separator ','\n"
                     "set logscale x\nset logscale y\n"
                     "set xlabel 'R'\nset ylabel 'uniformity deficit'\n"
                     "plot '%s' using 1:($5 > 0 ? $5 : 1e-16) with linespoints title 'deficit'\n",
                     csv_name.c_str());
        std::fclose(f);
    }
}

} // namespace micromag
