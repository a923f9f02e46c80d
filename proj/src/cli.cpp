// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lrps/harness.hpp"

#include "lrps/compression.hpp"
#include "lrps/io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace lrps {

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::string method;
    long long seed = -1;
    int trials = -1;
    double ratio = -1.0;
};

void add_common_flags(CLI::App* sub, CliOptions& opts, bool with_trials) {
    sub->add_option("--config", opts.config_path, "experiment config file")->required();
    sub->add_option("--seed", opts.seed, "override base seed");
    sub->add_option("--out-dir", opts.out_dir, "override output directory");
    sub->add_option("--ratio", opts.ratio, "restrict to a single compression ratio");
    sub->add_option("--method", opts.method, "restrict to a single method");
    if (with_trials) sub->add_option("--trials", opts.trials, "override trial count");
}

ExperimentSpec load_with_overrides(const CliOptions& opts) {
    ExperimentSpec spec = load_spec(opts.config_path);
    if (opts.seed >= 0) spec.base_seed = static_cast<std::uint64_t>(opts.seed);
    if (opts.trials > 0) spec.trials = opts.trials;
    if (!opts.out_dir.empty()) spec.out_dir = opts.out_dir;
    if (opts.ratio > 0) spec.ratios = {opts.ratio};
    if (!opts.method.empty()) spec.methods = {method_from_name(opts.method)};
    spec.validate();
    return spec;
}

int run_solve(const ExperimentSpec& spec) {
    const Method method = spec.methods.front();
    if (!is_solver_method(method))
        throw std::invalid_argument("solve: method must be lrsr, lrpsr_m or lrpsr_s "
                                    "(use radar-image for sf/sp)");
    const std::uint64_t seed = spec.base_seed;
    const Instance inst = make_instance(spec, seed, nullptr);
    const double ratio = spec.ratios.front();
    const SelectionMask mask =
        spec.mask_indices.empty()
            ? random_mask(inst.y_vec.size(), ratio, mask_seed(seed, 0))
            : mask_from_indices(inst.y_vec.size(), spec.mask_indices);
    const CVec y_cs = mask.apply(inst.y_vec);
    const GroundTruth gt{inst.l_t, inst.s_t};
    const RecoveryResult res = solve(y_cs, mask, inst.a, spec.rows(), spec.cols(),
                                     method_variant(method), spec.solver, &gt);

    std::filesystem::create_directories(spec.out_dir);
    std::string diag = "t,residual,rho,nmse_l,nmse_s\n";
    for (std::size_t i = 0; i < res.residual_history.size(); ++i) {
        diag += std::to_string(i + 1) + "," + format_g6(res.residual_history[i]) + "," +
                format_g6(res.rho_history[i]) + "," + format_g6(res.nmse_l_history[i]) + "," +
                format_g6(res.nmse_s_history[i]) + "\n";
    }
    write_text_file(spec.out_dir + "/solve_diagnostics.csv", diag);
    write_complex_csv(spec.out_dir + "/l_hat.csv", res.l);
    write_complex_csv(spec.out_dir + "/s_hat.csv", CMat(res.s));
    write_complex_csv(spec.out_dir + "/y.csv", inst.y_full);

    const double tcr = capped_tcr_db(tcr_db(res.s, inst.support));
    std::cout << "solve: method=" << method_name(method) << " ratio=" << format_g6(ratio)
              << " iterations=" << res.iterations
              << " residual=" << format_g6(res.residual_history.empty()
                                               ? 0.0
                                               : res.residual_history.back())
              << " tcr_db=" << format_g6(tcr) << " -> " << spec.out_dir << "\n";
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"compressive low-rank plus sparse demixing experiments"};
    app.require_subcommand(1);

    CliOptions opts;
    CLI::App* table1 = app.add_subcommand("table1", "average TCR per method and ratio");
    add_common_flags(table1, opts, true);
    CLI::App* nmse = app.add_subcommand("nmse", "per-iteration NMSE traces");
    add_common_flags(nmse, opts, true);
    CLI::App* radar_image = app.add_subcommand("radar-image", "grid images of |s| plus TCR report");
    add_common_flags(radar_image, opts, false);
    CLI::App* solve_cmd = app.add_subcommand("solve", "single recovery from one seeded instance");
    add_common_flags(solve_cmd, opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    try {
        const ExperimentSpec spec = load_with_overrides(opts);
        if (table1->parsed()) {
            const std::string path = run_table1(spec);
            std::cout << "table1: wrote " << path << " (" << spec.trials << " trials)\n";
        } else if (nmse->parsed()) {
            const std::string path = run_nmse_traces(spec);
            std::cout << "nmse: wrote " << path << " (" << spec.trials << " trials)\n";
        } else if (radar_image->parsed()) {
            run_radar_image(spec);
            std::cout << "radar-image: wrote " << spec.methods.size() + 1 << " images to "
                      << spec.out_dir << "\n";
        } else if (solve_cmd->parsed()) {
            return run_solve(spec);
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace lrps
