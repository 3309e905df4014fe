// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "micromag/vec3.hpp"

namespace micromag {

/// Configuration problem: unknown key, bad value, unreadable file. Maps to
/// exit code 2 in the CLI. The message names the offending section.key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KernelSection {
    std::string name = "gaussian4";
    double s = 0.5;
    double gamma = 1.0;
    double amplitude = 1.0;
    std::string tail = "gaussian"; // truncated_fractional: gaussian | none
    // optional declared singular lower bound j >= C / |z|^(3+2s) on |z| < R0;
    // set all three to override what the built-in kernel declares
    double j5_C = 0.0;
    double j5_s = 0.0;
    double j5_R0 = 0.0;
};

struct MeshSection {
    double R = 1.0;
    double h = 0.0;              // 0: derive from cells_per_diameter
    int cells_per_diameter = 16; // used when h == 0
    int n_theta = 32;
};

struct EnergySection {
    bool exchange = true;
    bool magnetostatic = true;
    bool anisotropy = false;
    bool dmi = false;
    Vec3 easy_axis{0.0, 0.0, 1.0};
    double anisotropy_strength = 1.0;
    double dmi_amplitude = 0.1;
    std::string field = "vortex"; // constant | vortex | random
    Vec3 sigma{0.0, 0.0, 1.0};    // for field = constant
};

struct MinimizeSection {
    int max_iters = 2000;
    double grad_tol = 1e-8;
    std::string step_rule = "bb"; // bb | fixed
    double fixed_step = 1e-2;
    bool init_constant = true;
    bool init_vortex = true;
    int random_restarts = 3;
    bool record_trace = true;
};

struct SweepSection {
    double r_min = 0.3;
    double r_max = 3.0;
    int points = 10;
    int cells_per_diameter = 16;
    double deficit_threshold = 1e-3;
    double energy_margin = 1e-3;
};

struct OutputSection {
    std::string dir = "out";
};

struct RunConfig {
    KernelSection kernel;
    MeshSection mesh;
    EnergySection energy;
    MinimizeSection minimize;
    SweepSection sweep;
    OutputSection output;
    std::uint64_t seed = 1;
    int threads = 0; // 0: library default
};

/// Parses the sectioned key/value config file. Unknown sections or keys and
/// malformed values are errors (strict mode).
RunConfig load_config(const std::string& path);

/// Applies one "section.key=value" override through the same strict schema.
void apply_override(RunConfig& config, const std::string& assignment);

/// Resolved view of the config for report provenance, insertion-ordered.
std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& config);

} // namespace micromag
