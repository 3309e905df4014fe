// Copyright (c) the micromag authors
// SPDX-License-Identifier: Apache-2.0
//
// Batch front-end: kernel diagnostics, energy evaluation, minimization,
// regime sweeps and reference-constant computation, driven by a sectioned
// config file with command-line overrides.
//
//   micromag <command> --config <path> [--set key=value ...] [--out dir]
//                      [--threads N] [--seed N]
//
// Exit codes: 0 ok, 2 config error, 3 precondition violation,
// 4 numerical non-convergence (partial results are still written).
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "micromag/config.hpp"
#include "micromag/errors.hpp"
#include "micromag/magnetostatics.hpp"
#include "micromag/report.hpp"
#include "micromag/simd/pair_kernels.hpp"

namespace {

using namespace micromag;
using nlohmann::json;

json config_json(const RunConfig& config) {
    json j = json::object();
    for (const auto& [key, value] : resolved_entries(config)) j[key] = value;
    return j;
}

void write_report(const std::string& dir, const RunConfig& config, const std::string& command,
                  json results) {
    json j;
    j["command"] = command;
    j["config"] = config_json(config);
    j["simd"] = simd::isa_name(simd::active_isa());
    j["results"] = std::move(results);
    std::ofstream out(dir + "/report.json");
    out << j.dump(2) << "\n";
}

Magnetization field_from_config(const RunConfig& config, const BallMesh& mesh) {
    if (config.energy.field == "constant") return constant_field(mesh, config.energy.sigma);
    if (config.energy.field == "vortex") return vortex_field(mesh);
    return random_unit_field(mesh, config.seed);
}

EnergyModel model_from_config(const RunConfig& config, const Kernel& kernel) {
    EnergyModel model;
    model.kernel = &kernel;
    model.exchange = config.energy.exchange;
    model.magnetostatic = config.energy.magnetostatic;
    if (config.energy.anisotropy)
        model.anisotropy =
            uniaxial_anisotropy(config.energy.easy_axis.normalized(), config.energy.anisotropy_strength);
    if (config.energy.dmi) model.dmi = gaussian_dmi(config.energy.dmi_amplitude);
    return model;
}

json breakdown_json(const EnergyBreakdown& b) {
    return {{"exchange", b.exchange},   {"magnetostatic", b.magnetostatic},
            {"anisotropy", b.anisotropy}, {"dmi", b.dmi},
            {"total", b.total},         {"mesh_h", b.mesh_h},
            {"kernel", b.kernel_name},  {"pair_count", b.pair_count},
            {"elapsed_seconds", b.elapsed_seconds}};
}

int cmd_kernel_check(const RunConfig& config, const std::string& dir) {
    const Kernel kernel = kernel_from_config(config.kernel);
    const KernelReport report = build_kernel_report(kernel, {}, config.seed);
    std::ofstream(dir + "/kernel_report.txt") << kernel_report_to_table(report);
    std::ofstream(dir + "/kernel_report.json") << kernel_report_to_json(report) << "\n";
    write_tail_csv(dir + "/tail_decay.csv", report.tail);

    json extra;
    extra["report"] = json::parse(kernel_report_to_json(report));
    // (J4) table: Q over a few diameters, plus the declared-bound radius
    json q_table = json::array();
    for (double R : {0.25, 0.5, 1.0, 2.0}) {
        const EssentialInfimum q = essential_infimum(kernel, 2.0 * R);
        q_table.push_back({{"R", R}, {"Q_diam_2R", q.value}, {"exact", q.exact}});
    }
    extra["essential_infimum"] = q_table;
    try {
        extra["critical_radius_small"] = critical_radius_small(kernel);
    } catch (const CriterionInapplicable&) {
        extra["critical_radius_small"] = nullptr;
    }
    if (kernel.radial_monotone) { // exact infimum: the interval scan is cheap
        json intervals = json::array();
        for (const RegimeInterval& iv : constant_regime_set(kernel, 0.05, 20.0, 256, 1e-5))
            intervals.push_back({{"lo", iv.lo},
                                 {"hi", iv.hi},
                                 {"open_left", iv.open_left},
                                 {"open_right", iv.open_right}});
        extra["constant_regime_intervals"] = intervals;
    }
    write_report(dir, config, "kernel-check", extra);
    std::cout << kernel_report_to_table(report);
    return 0;
}

int cmd_energy(const RunConfig& config, const std::string& dir) {
    const Kernel kernel = kernel_from_config(config.kernel);
    const BallMesh mesh = build_ball_mesh(config.mesh.R, mesh_spacing_from_config(config.mesh));
    const EnergyModel model = model_from_config(config, kernel);
    const Magnetization m = field_from_config(config, mesh);
    const EnergyBreakdown breakdown = total_energy(mesh, model, m);
    write_energy_csv(dir + "/energy.csv", breakdown);
    save_field_csv(dir + "/field.csv", m);
    json results = breakdown_json(breakdown);
    results["mesh_cells"] = mesh.cell_count();
    results["mesh_volume"] = mesh.total_volume();
    results["mesh_volume_error_rel"] =
        mesh.total_volume() / (4.0 / 3.0 * M_PI * std::pow(config.mesh.R, 3)) - 1.0;
    write_report(dir, config, "energy", results);
    std::cout << "total energy " << breakdown.total << " (J " << breakdown.exchange << ", W "
              << breakdown.magnetostatic << ")\n";
    return 0;
}

int cmd_minimize(const RunConfig& config, const std::string& dir) {
    const Kernel kernel = kernel_from_config(config.kernel);
    const BallMesh mesh = build_ball_mesh(config.mesh.R, mesh_spacing_from_config(config.mesh));
    const EnergyModel model = model_from_config(config, kernel);

    MinimizeOptions opts;
    opts.max_iters = config.minimize.max_iters;
    opts.grad_tol = config.minimize.grad_tol;
    opts.step_rule = config.minimize.step_rule == "fixed" ? StepRule::fixed : StepRule::bb_backtracking;
    opts.fixed_step = config.minimize.fixed_step;
    opts.init_constant = config.minimize.init_constant;
    opts.init_vortex = config.minimize.init_vortex;
    opts.random_restarts = config.minimize.random_restarts;
    opts.seed = config.seed;
    opts.record_trace = config.minimize.record_trace;

    const MinimizeResult result = minimize(mesh, model, opts);
    save_field_csv(dir + "/minimizer.csv", result.minimizer);
    if (opts.record_trace) write_trace_csv(dir + "/trace.csv", result.trace);
    write_equatorial_slice(result.minimizer, dir + "/slice.dat", dir + "/slice.gp");

    json results;
    results["mesh_cells"] = mesh.cell_count();
    results["mesh_volume"] = mesh.total_volume();
    results["mesh_volume_error_rel"] =
        mesh.total_volume() / (4.0 / 3.0 * M_PI * std::pow(config.mesh.R, 3)) - 1.0;
    results["energy"] = breakdown_json(result.energy);
    results["iterations"] = result.iterations;
    results["converged"] = result.converged;
    results["init_kind"] = result.init_kind;
    results["deficit"] = uniformity_deficit(result.minimizer);
    json inits = json::array();
    for (const auto& [kind, e] : result.init_energies) inits.push_back({{"init", kind}, {"energy", e}});
    results["init_energies"] = inits;
    write_report(dir, config, "minimize", results);
    std::cout << "minimize: E=" << result.energy.total << " deficit="
              << uniformity_deficit(result.minimizer) << " init=" << result.init_kind
              << (result.converged ? "" : "  [not converged]") << "\n";
    return result.converged ? 0 : 4;
}

int cmd_sweep(const RunConfig& config, const std::string& dir) {
    const Kernel kernel = kernel_from_config(config.kernel);
    SweepConfig sweep;
    sweep.r_min = config.sweep.r_min;
    sweep.r_max = config.sweep.r_max;
    sweep.points = config.sweep.points;
    sweep.cells_per_diameter = config.sweep.cells_per_diameter;
    sweep.deficit_threshold = config.sweep.deficit_threshold;
    sweep.energy_margin = config.sweep.energy_margin;
    sweep.minimize.max_iters = config.minimize.max_iters;
    sweep.minimize.grad_tol = config.minimize.grad_tol;
    sweep.minimize.random_restarts = config.minimize.random_restarts;
    sweep.minimize.seed = config.seed;

    const std::vector<RegimeSweepRow> rows = regime_sweep(kernel, sweep);
    write_sweep_csv(dir + "/sweep.csv", rows);
    write_sweep_plots(dir, "sweep.csv");

    json jrows = json::array();
    bool any_failed = false;
    for (const auto& r : rows) {
        jrows.push_back({{"R", r.R},
                         {"best_energy", r.best_energy},
                         {"constant_energy", r.constant_energy},
                         {"constant_energy_disc", r.constant_energy_disc},
                         {"deficit", r.deficit},
                         {"classification", to_string(r.classification)},
                         {"best_init", r.best_init},
                         {"note", r.note}});
        if (!r.note.empty()) any_failed = true;
        std::cout << "R=" << r.R << "  E=" << r.best_energy << "  deficit=" << r.deficit << "  "
                  << to_string(r.classification) << "\n";
    }
    json results;
    results["rows"] = jrows;
    results["monotone"] = classification_is_monotone(rows);
    write_report(dir, config, "sweep", results);
    return any_failed ? 4 : 0;
}

int cmd_constants(const RunConfig& config, const std::string& dir) {
    const int n_theta = config.mesh.n_theta;
    const double w_e3_unit = hemisphere_reduced_exact(1);
    const double w_vortex_unit = hemisphere_reduced_exact(3);
    const double c2 = w_e3_unit - w_vortex_unit;
    const VortexGap gap = vortex_energy_gap(1.0, n_theta);

    json results;
    results["uniform_ball_energy"] = {{"value", 4.0 * M_PI / 9.0}, {"expression", "4*pi/9"}};
    results["vortex_h1_norm"] = {{"value", 4.0 / 15.0 * M_PI * (73.0 - 15.0 * M_PI)},
                                 {"expression", "(4/15)*pi*(73-15*pi)"}};
    results["c2"] = {{"value", c2},
                     {"method", "azimuth-reduced elliptic quadrature"},
                     {"surface_quadrature_value", gap.c2},
                     {"hemisphere_quadrature_value", gap.c2_hemisphere},
                     {"n_theta", n_theta},
                     {"error_bar", std::abs(gap.c2_hemisphere - c2)}};
    write_report(dir, config, "constants", results);

    std::ofstream txt(dir + "/constants.txt");
    txt.precision(12);
    txt << "uniform ball magnetostatic energy (R=1): " << 4.0 * M_PI / 9.0 << "\n"
        << "vortex H1 norm (R=1):                    " << 4.0 / 15.0 * M_PI * (73.0 - 15.0 * M_PI)
        << "\n"
        << "vortex energy gap constant c2:           " << c2 << "\n";
    std::cout << "c2 = " << c2 << " (surface route " << gap.c2 << ", hemisphere route "
              << gap.c2_hemisphere << ")\n";
    return 0;
}

int cmd_vortex_gap(const RunConfig& config, const std::string& dir) {
    const VortexGap gap = vortex_energy_gap(config.mesh.R, config.mesh.n_theta);
    json results;
    results["R"] = config.mesh.R;
    results["n_theta"] = gap.n_theta;
    results["gap"] = gap.gap;
    results["c2"] = gap.c2;
    results["gap_hemisphere"] = gap.gap_hemisphere;
    results["c2_hemisphere"] = gap.c2_hemisphere;
    write_report(dir, config, "vortex-gap", results);
    std::cout << "gap(R=" << config.mesh.R << ") = " << gap.gap << ", c2 = " << gap.c2 << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlocal micromagnetic energies on ball domains"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    int threads = 0;
    std::int64_t seed = -1;

    for (const char* name :
         {"kernel-check", "energy", "minimize", "sweep", "constants", "vortex-gap"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "config file path");
        sub->add_option("--set", overrides, "override: section.key=value");
        sub->add_option("--out", out_dir, "output directory (default from config)");
        sub->add_option("--threads", threads, "worker thread count");
        sub->add_option("--seed", seed, "random seed override");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
        for (const std::string& assignment : overrides) apply_override(config, assignment);
        if (!out_dir.empty()) config.output.dir = out_dir;
        if (threads > 0) config.threads = threads;
        if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
        if (config.threads > 0) omp_set_num_threads(config.threads);

        std::filesystem::create_directories(config.output.dir);
        const std::string dir = config.output.dir;
        {
            std::ofstream probe(dir + "/.write_probe");
            if (!probe) throw ConfigError("config: output.dir '" + dir + "' is not writable");
        }
        std::filesystem::remove(dir + "/.write_probe");
        const std::string command = app.get_subcommands().front()->get_name();

        if (command == "kernel-check") return cmd_kernel_check(config, dir);
        if (command == "energy") return cmd_energy(config, dir);
        if (command == "minimize") return cmd_minimize(config, dir);
        if (command == "sweep") return cmd_sweep(config, dir);
        if (command == "constants") return cmd_constants(config, dir);
        if (command == "vortex-gap") return cmd_vortex_gap(config, dir);
        std::cerr << "unknown command " << command << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const MeshTooCoarse& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const CriterionInapplicable& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const Unsupported& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
