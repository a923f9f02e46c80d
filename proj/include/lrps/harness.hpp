// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "lrps/config_file.hpp"
#include "lrps/metrics.hpp"
#include "lrps/scene_model.hpp"
#include "lrps/solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lrps {

/// Everything the experiment runner can evaluate: the two full-data
/// baselines and the three compressive solver variants.
enum class Method { sp, sf, lrsr, lrpsr_m, lrpsr_s };

std::string method_name(Method m);
Method method_from_name(const std::string& name);
bool is_solver_method(Method m);
Variant method_variant(Method m);

struct ExperimentSpec {
    enum class Kind { generic_gaussian, sfcw_radar };

    Kind kind = Kind::generic_gaussian;

    // generic_gaussian ground truth
    int m = 10, n = 20, q = 256;
    int rank = 2;
    int num_defects = 4;

    // sfcw_radar ground truth
    RadarConfig radar;
    int radar_num_defects = 4;
    std::vector<int> defect_cells;       // empty: random distinct cells per trial
    double layer_to_defect_ratio = 10.0; // max |alpha_g| over max |alpha_p|
    double layer_decay = 0.3;            // per-reflection magnitude decay

    double snr_db = 20.0;
    std::vector<double> ratios{0.3, 0.4, 0.5};
    std::vector<Method> methods{Method::sp, Method::sf, Method::lrsr, Method::lrpsr_m,
                                Method::lrpsr_s};
    int trials = 100;
    std::uint64_t base_seed = 1;
    SolverConfig solver;
    int sp_rank = 0;  // 0: rank for generic instances, 1 for the radar layer
    std::string out_dir = ".";
    std::vector<Eigen::Index> mask_indices;  // optional pinned selection (solve command)

    int rows() const;
    int cols() const;
    int grid() const;
    int effective_sp_rank() const;
    void validate() const;
};

ExperimentSpec spec_from_config(const ConfigFile& config);
ExperimentSpec load_spec(const std::string& path);

/// One seeded ground-truth draw plus its full noisy measurement.
struct Instance {
    CMat l_t;
    CVec s_t;
    CMat a;        // MN x Q
    CMat y_full;   // L + D + Z
    CVec y_vec;    // vec(y_full)
    DefectSupport support;
};

/// Deterministic in (spec, trial_seed); dict caches the steering dictionary
/// across radar trials (pass nullptr to rebuild).
Instance make_instance(const ExperimentSpec& spec, std::uint64_t trial_seed, const CMat* dict);

std::uint64_t trial_seed(const ExperimentSpec& spec, int trial);
std::uint64_t mask_seed(std::uint64_t trial_seed_value, int ratio_index);

struct Table1Row {
    double ratio = 1.0;
    Method method = Method::sp;
    double mean_tcr_db = 0.0;
    double std_tcr_db = 0.0;
    int trials = 0;
};

std::vector<Table1Row> compute_table1(const ExperimentSpec& spec);
std::string table1_csv(const std::vector<Table1Row>& rows);
/// Writes <out_dir>/table1.csv and returns its path.
std::string run_table1(const ExperimentSpec& spec);

struct TraceRow {
    Method method = Method::lrpsr_m;
    double ratio = 0.0;
    int t = 0;
    double nmse_l = 0.0;
    double nmse_s = 0.0;
};

std::vector<TraceRow> compute_nmse_traces(const ExperimentSpec& spec);
std::string traces_csv(const std::vector<TraceRow>& rows);
std::string run_nmse_traces(const ExperimentSpec& spec);

struct RadarImageEntry {
    Method method = Method::sp;
    double ratio = 1.0;
    RVec image;     // |s| per grid cell
    double tcr = 0.0;
};

struct RadarImageResult {
    RVec truth_image;
    std::vector<RadarImageEntry> entries;
    DefectSupport support;
};

RadarImageResult compute_radar_image(const ExperimentSpec& spec, std::uint64_t seed);
/// Writes per-method grid CSVs and graymaps plus a TCR report.
void run_radar_image(const ExperimentSpec& spec);

/// Cells of the top-count magnitudes (ties broken toward lower index).
std::vector<int> top_cells(const RVec& image, int count);

/// WORKER_COUNT environment override, defaulting to the hardware thread count.
int worker_count();

int cli_main(int argc, const char* const* argv);

}  // namespace lrps
