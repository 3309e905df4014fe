// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
#include "micromag/config.hpp"

#include <cstdio>
#include <functional>
#include <sstream>

namespace micromag {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: " + key + ": expected a number, got '" + v + "'");
    }
}

int parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const int x = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: " + key + ": expected an integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw ConfigError("config: " + key + ": expected a boolean, got '" + v + "'");
}

Vec3 parse_vec3(const std::string& key, const std::string& v) {
    std::istringstream is(v);
    Vec3 out;
    if (!(is >> out.x >> out.y >> out.z))
        throw ConfigError("config: " + key + ": expected three numbers, got '" + v + "'");
    std::string rest;
    if (is >> rest) throw ConfigError("config: " + key + ": trailing characters in '" + v + "'");
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const unsigned long long x = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: " + key + ": expected an unsigned integer, got '" + v + "'");
    }
}

// schema: maps section.key to a setter
using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& schema() {
    static const std::map<std::string, Setter> table = {
        {"kernel.name", [](RunConfig& c, const std::string&, const std::string& v) { c.kernel.name = v; }},
        {"kernel.s", [](RunConfig& c, const std::string& k, const std::string& v) { c.kernel.s = parse_double(k, v); }},
        {"kernel.gamma", [](RunConfig& c, const std::string& k, const std::string& v) { c.kernel.gamma = parse_double(k, v); }},
        {"kernel.amplitude", [](RunConfig& c, const std::string& k, const std::string& v) { c.kernel.amplitude = parse_double(k, v); }},
        {"kernel.tail", [](RunConfig& c, const std::string& k, const std::string& v) {
             if (v != "gaussian" && v != "none")
                 throw ConfigError("config: " + k + ": expected gaussian or none, got '" + v + "'");
             c.kernel.tail = v;
         }},
        {"kernel.j5_C", [](RunConfig& c, const std::string& k, const std::string& v) { c.kernel.j5_C = parse_double(k, v); }},
        {"kernel.j5_s", [](RunConfig& c, const std::string& k, const std::string& v) { c.kernel.j5_s = parse_double(k, v); }},
        {"kernel.j5_R0", [](RunConfig& c, const std::string& k, const std::string& v) { c.kernel.j5_R0 = parse_double(k, v); }},
        {"mesh.R", [](RunConfig& c, const std::string& k, const std::string& v) { c.mesh.R = parse_double(k, v); }},
        {"mesh.h", [](RunConfig& c, const std::string& k, const std::string& v) { c.mesh.h = parse_double(k, v); }},
        {"mesh.cells_per_diameter", [](RunConfig& c, const std::string& k, const std::string& v) { c.mesh.cells_per_diameter = parse_int(k, v); }},
        {"mesh.n_theta", [](RunConfig& c, const std::string& k, const std::string& v) { c.mesh.n_theta = parse_int(k, v); }},
        {"energy.exchange", [](RunConfig& c, const std::string& k, const std::string& v) { c.energy.exchange = parse_bool(k, v); }},
        {"energy.magnetostatic", [](RunConfig& c, const std::string& k, const std::string& v) { c.energy.magnetostatic = parse_bool(k, v); }},
        {"energy.anisotropy", [](RunConfig& c, const std::string& k, const std::string& v) { c.energy.anisotropy = parse_bool(k, v); }},
        {"energy.dmi", [](RunConfig& c, const std::string& k, const std::string& v) { c.energy.dmi = parse_bool(k, v); }},
        {"energy.easy_axis", [](RunConfig& c, const std::string& k, const std::string& v) { c.energy.easy_axis = parse_vec3(k, v); }},
        {"energy.anisotropy_strength", [](RunConfig& c, const std::string& k, const std::string& v) { c.energy.anisotropy_strength = parse_double(k, v); }},
        {"energy.dmi_amplitude", [](RunConfig& c, const std::string& k, const std::string& v) { c.energy.dmi_amplitude = parse_double(k, v); }},
        {"energy.field", [](RunConfig& c, const std::string& k, const std::string& v) {
             if (v != "constant" && v != "vortex" && v != "random")
                 throw ConfigError("config: " + k + ": expected constant, vortex or random, got '" + v + "'");
             c.energy.field = v;
         }},
        {"energy.sigma", [](RunConfig& c, const std::string& k, const std::string& v) { c.energy.sigma = parse_vec3(k, v); }},
        {"minimize.max_iters", [](RunConfig& c, const std::string& k, const std::string& v) { c.minimize.max_iters = parse_int(k, v); }},
        {"minimize.grad_tol", [](RunConfig& c, const std::string& k, const std::string& v) { c.minimize.grad_tol = parse_double(k, v); }},
        {"minimize.step_rule", [](RunConfig& c, const std::string& k, const std::string& v) {
             if (v != "bb" && v != "fixed")
                 throw ConfigError("config: " + k + ": expected bb or fixed, got '" + v + "'");
             c.minimize.step_rule = v;
         }},
        {"minimize.fixed_step", [](RunConfig& c, const std::string& k, const std::string& v) { c.minimize.fixed_step = parse_double(k, v); }},
        {"minimize.init_constant", [](RunConfig& c, const std::string& k, const std::string& v) { c.minimize.init_constant = parse_bool(k, v); }},
        {"minimize.init_vortex", [](RunConfig& c, const std::string& k, const std::string& v) { c.minimize.init_vortex = parse_bool(k, v); }},
        {"minimize.random_restarts", [](RunConfig& c, const std::string& k, const std::string& v) { c.minimize.random_restarts = parse_int(k, v); }},
        {"minimize.record_trace", [](RunConfig& c, const std::string& k, const std::string& v) { c.minimize.record_trace = parse_bool(k, v); }},
        {"sweep.r_min", [](RunConfig& c, const std::string& k, const std::string& v) { c.sweep.r_min = parse_double(k, v); }},
        {"sweep.r_max", [](RunConfig& c, const std::string& k, const std::string& v) { c.sweep.r_max = parse_double(k, v); }},
        {"sweep.points", [](RunConfig& c, const std::string& k, const std::string& v) { c.sweep.points = parse_int(k, v); }},
        {"sweep.cells_per_diameter", [](RunConfig& c, const std::string& k, const std::string& v) { c.sweep.cells_per_diameter = parse_int(k, v); }},
        {"sweep.deficit_threshold", [](RunConfig& c, const std::string& k, const std::string& v) { c.sweep.deficit_threshold = parse_double(k, v); }},
        {"sweep.energy_margin", [](RunConfig& c, const std::string& k, const std::string& v) { c.sweep.energy_margin = parse_double(k, v); }},
        {"output.dir", [](RunConfig& c, const std::string&, const std::string& v) { c.output.dir = v; }},
        {"run.seed", [](RunConfig& c, const std::string& k, const std::string& v) { c.seed = parse_u64(k, v); }},
        {"run.threads", [](RunConfig& c, const std::string& k, const std::string& v) { c.threads = parse_int(k, v); }},
    };
    return table;
}

void apply_entry(RunConfig& config, const std::string& qualified_key, const std::string& value) {
    const auto it = schema().find(qualified_key);
    if (it == schema().end()) throw ConfigError("config: unknown key '" + qualified_key + "'");
    it->second(config, qualified_key, value);
}

} // namespace

RunConfig load_config(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "r");
    if (!f) throw ConfigError("config: cannot open '" + path + "'");
    RunConfig config;
    char buf[1024];
    std::string section;
    int line_no = 0;
    while (std::fgets(buf, sizeof buf, f)) {
        ++line_no;
        std::string line = trim(buf);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                std::fclose(f);
                throw ConfigError("config: " + path + ":" + std::to_string(line_no) +
                                  ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::fclose(f);
            throw ConfigError("config: " + path + ":" + std::to_string(line_no) +
                              ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            apply_entry(config, section.empty() ? key : section + "." + key, value);
        } catch (const ConfigError&) {
            std::fclose(f);
            throw;
        }
    }
    std::fclose(f);
    return config;
}

void apply_override(RunConfig& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("config: override '" + assignment + "' must look like section.key=value");
    apply_entry(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& c) {
    char buf[64];
    const auto num = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    const auto vec = [&](const Vec3& v) { return num(v.x) + " " + num(v.y) + " " + num(v.z); };
    const auto b = [](bool v) { return std::string(v ? "true" : "false"); };
    return {
        {"kernel.name", c.kernel.name},
        {"kernel.s", num(c.kernel.s)},
        {"kernel.gamma", num(c.kernel.gamma)},
        {"kernel.amplitude", num(c.kernel.amplitude)},
        {"kernel.tail", c.kernel.tail},
        {"kernel.j5_C", num(c.kernel.j5_C)},
        {"kernel.j5_s", num(c.kernel.j5_s)},
        {"kernel.j5_R0", num(c.kernel.j5_R0)},
        {"mesh.R", num(c.mesh.R)},
        {"mesh.h", num(c.mesh.h)},
        {"mesh.cells_per_diameter", std::to_string(c.mesh.cells_per_diameter)},
        {"mesh.n_theta", std::to_string(c.mesh.n_theta)},
        {"energy.exchange", b(c.energy.exchange)},
        {"energy.magnetostatic", b(c.energy.magnetostatic)},
        {"energy.anisotropy", b(c.energy.anisotropy)},
        {"energy.dmi", b(c.energy.dmi)},
        {"energy.easy_axis", vec(c.energy.easy_axis)},
        {"energy.anisotropy_strength", num(c.energy.anisotropy_strength)},
        {"energy.dmi_amplitude", num(c.energy.dmi_amplitude)},
        {"energy.field", c.energy.field},
        {"energy.sigma", vec(c.energy.sigma)},
        {"minimize.max_iters", std::to_string(c.minimize.max_iters)},
        {"minimize.grad_tol", num(c.minimize.grad_tol)},
        {"minimize.step_rule", c.minimize.step_rule},
        {"minimize.fixed_step", num(c.minimize.fixed_step)},
        {"minimize.init_constant", b(c.minimize.init_constant)},
        {"minimize.init_vortex", b(c.minimize.init_vortex)},
        {"minimize.random_restarts", std::to_string(c.minimize.random_restarts)},
        {"minimize.record_trace", b(c.minimize.record_trace)},
        {"sweep.r_min", num(c.sweep.r_min)},
        {"sweep.r_max", num(c.sweep.r_max)},
        {"sweep.points", std::to_string(c.sweep.points)},
        {"sweep.cells_per_diameter", std::to_string(c.sweep.cells_per_diameter)},
        {"sweep.deficit_threshold", num(c.sweep.deficit_threshold)},
        {"sweep.energy_margin", num(c.sweep.energy_margin)},
        {"output.dir", c.output.dir},
        {"run.seed", std::to_string(c.seed)},
        {"run.threads", std::to_string(c.threads)},
    };
}

} // namespace micromag
