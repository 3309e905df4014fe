// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <sstream>

#include "micromag/kernels.hpp"

#include <json.hpp>

namespace micromag {

namespace {
// JSON has no infinity; encode it as a string marker.
nlohmann::json json_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}
} // namespace

std::string kernel_report_to_json(const KernelReport& rep) {
    nlohmann::json j;
    j["kernel"] = rep.kernel_name;
    j["symmetry"] = {{"symmetric", rep.symmetry.symmetric},
                     {"max_asymmetry", json_number(rep.symmetry.max_asymmetry)}};
    j["levy_constant"] = {{"value", json_number(rep.levy.value)},
                          {"error", json_number(rep.levy.error)},
                          {"infinite", rep.levy.infinite},
                          {"stochastic", rep.levy.stochastic},
                          {"outer_cutoff", json_number(rep.levy.outer_cutoff)}};
    j["non_integrability"] = {{"fitted_exponent", json_number(rep.j3.fitted_exponent)},
                              {"verdict", to_string(rep.j3.verdict)},
                              {"note", "heuristic: finite sampling cannot decide divergence"}};
    nlohmann::json grid = nlohmann::json::array();
    for (std::size_t i = 0; i < rep.j3.eps.size(); ++i)
        grid.push_back({{"eps", rep.j3.eps[i]}, {"integral", json_number(rep.j3.integral[i])}});
    j["non_integrability"]["grid"] = grid;
    nlohmann::json tail = nlohmann::json::array();
    for (const auto& row : rep.tail)
        tail.push_back({{"R", row.R}, {"value", json_number(row.value)}});
    j["tail_decay_table"] = tail;
    j["tail_decaying"] = rep.tail_decaying;
    if (rep.j5_fit)
        j["j5_fit"] = {{"C", rep.j5_fit->C}, {"s", rep.j5_fit->s}};
    if (rep.declared_j5)
        j["j5_declared"] = {{"C", rep.declared_j5->C},
                            {"s", rep.declared_j5->s},
                            {"R0", json_number(rep.declared_j5->R0)}};
    return j.dump(2);
}

std::string kernel_report_to_table(const KernelReport& rep) {
    std::ostringstream os;
    char buf[160];
    os << "kernel: " << rep.kernel_name << "\n";
    std::snprintf(buf, sizeof buf, "  symmetry          : %s (max asymmetry %.3e)\n",
                  rep.symmetry.symmetric ? "ok" : "VIOLATED", rep.symmetry.max_asymmetry);
    os << buf;
    if (rep.levy.infinite)
        os << "  levy constant L_j : infinite (integral kept growing)\n";
    else {
        std::snprintf(buf, sizeof buf, "  levy constant L_j : %.9g  (err %.2e%s)\n", rep.levy.value,
                      rep.levy.error, rep.levy.stochastic ? ", stochastic" : "");
        os << buf;
    }
    std::snprintf(buf, sizeof buf, "  origin singularity: %s (fit exponent %.3f, heuristic)\n",
                  to_string(rep.j3.verdict), rep.j3.fitted_exponent);
    os << buf;
    os << "  tail decay (R, (1/R^2) int_{B_R} |z|^2 j)"
       << (rep.tail_decaying ? ":\n" : "  [NOT decaying on this range]:\n");
    for (const auto& row : rep.tail) {
        std::snprintf(buf, sizeof buf, "    %8.3f  %.6e\n", row.R, row.value);
        os << buf;
    }
    if (rep.j5_fit) {
        std::snprintf(buf, sizeof buf, "  fitted lower bound: C=%.4g, s=%.4f\n", rep.j5_fit->C,
                      rep.j5_fit->s);
        os << buf;
    }
    return os.str();
}

} // namespace micromag
