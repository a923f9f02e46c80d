// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lrps/harness.hpp"

#include "lrps/baselines.hpp"
#include "lrps/compression.hpp"
#include "lrps/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace lrps {

namespace {

constexpr std::uint64_t kSceneStream = 0x7363656eULL;
constexpr std::uint64_t kLayerStream = 0x6c617972ULL;
constexpr std::uint64_t kNoiseStream = 0x686e6f69ULL;

void run_parallel(int jobs, const std::function<void(int)>& body) {
    const int workers = std::min(worker_count(), jobs);
    if (workers <= 1) {
        for (int i = 0; i < jobs; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto loop = [&] {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= jobs) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(loop);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

RVec magnitude_image(const CVec& s) {
    return s.cwiseAbs();
}

RMat reshape_image(const RVec& image, int rows, int cols) {
    RMat out(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) out(r, c) = image(r * cols + c);
    return out;
}

// Full-data baseline evaluation; solver methods never take this path.
double baseline_tcr(Method method, const Instance& inst, const ExperimentSpec& spec) {
    if (is_solver_method(method))
        throw std::logic_error("baseline_tcr: called with a solver method");
    const ClutterRemovalOutput out =
        method == Method::sf ? spatial_filter(inst.y_full, inst.a)
                             : subspace_projection(inst.y_full, spec.effective_sp_rank(), inst.a);
    return capped_tcr_db(tcr_db(out.s_img, inst.support));
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::sp: return "sp";
        case Method::sf: return "sf";
        case Method::lrsr: return "lrsr";
        case Method::lrpsr_m: return "lrpsr_m";
        case Method::lrpsr_s: return "lrpsr_s";
    }
    return "unknown";
}

Method method_from_name(const std::string& name) {
    if (name == "sp") return Method::sp;
    if (name == "sf") return Method::sf;
    if (name == "lrsr") return Method::lrsr;
    if (name == "lrpsr_m") return Method::lrpsr_m;
    if (name == "lrpsr_s") return Method::lrpsr_s;
    throw std::invalid_argument("unknown method: " + name);
}

bool is_solver_method(Method m) {
    return m == Method::lrsr || m == Method::lrpsr_m || m == Method::lrpsr_s;
}

Variant method_variant(Method m) {
    switch (m) {
        case Method::lrsr: return Variant::lrsr;
        case Method::lrpsr_m: return Variant::lrpsr_m;
        case Method::lrpsr_s: return Variant::lrpsr_s;
        default: throw std::invalid_argument("method has no solver variant: " + method_name(m));
    }
}

int ExperimentSpec::rows() const {
    return kind == Kind::generic_gaussian ? m : radar.num_antennas;
}

int ExperimentSpec::cols() const {
    return kind == Kind::generic_gaussian ? n : radar.num_freqs;
}

int ExperimentSpec::grid() const {
    return kind == Kind::generic_gaussian ? q : radar.grid_size();
}

int ExperimentSpec::effective_sp_rank() const {
    if (sp_rank > 0) return sp_rank;
    return kind == Kind::generic_gaussian ? rank : 1;
}

void ExperimentSpec::validate() const {
    if (trials < 1) throw std::invalid_argument("ExperimentSpec: trials must be >= 1");
    if (methods.empty()) throw std::invalid_argument("ExperimentSpec: methods must be nonempty");
    if (ratios.empty()) throw std::invalid_argument("ExperimentSpec: ratios must be nonempty");
    for (double r : ratios)
        if (!(r > 0.0) || r > 1.0)
            throw std::invalid_argument("ExperimentSpec: ratios must lie in (0, 1]");
    if (kind == Kind::generic_gaussian) {
        if (m < 1 || n < 1 || q < 1)
            throw std::invalid_argument("ExperimentSpec: dimensions must be positive");
        if (rank < 0 || rank > std::min(m, n))
            throw std::invalid_argument("ExperimentSpec: rank out of range");
        if (num_defects < 1 || num_defects >= q)
            throw std::invalid_argument("ExperimentSpec: num_defects must satisfy 1 <= N_d < Q");
    } else {
        radar.validate();
        if (radar_num_defects < 1 || radar_num_defects >= radar.grid_size())
            throw std::invalid_argument("ExperimentSpec: num_defects must satisfy 1 <= N_d < Q");
        for (int cell : defect_cells)
            if (cell < 0 || cell >= radar.grid_size())
                throw std::invalid_argument("ExperimentSpec: defect cell out of range");
        if (!defect_cells.empty() &&
            static_cast<int>(defect_cells.size()) != radar_num_defects)
            throw std::invalid_argument(
                "ExperimentSpec: defect_cells length must equal num_defects");
        if (layer_to_defect_ratio <= 0 || layer_decay <= 0)
            throw std::invalid_argument("ExperimentSpec: layer amplitude parameters must be positive");
    }
    solver.validate();
}

ExperimentSpec spec_from_config(const ConfigFile& config) {
    ExperimentSpec spec;
    const std::string kind = config.get_string("kind");
    if (kind == "generic_gaussian")
        spec.kind = ExperimentSpec::Kind::generic_gaussian;
    else if (kind == "sfcw_radar")
        spec.kind = ExperimentSpec::Kind::sfcw_radar;
    else
        throw std::runtime_error("config: kind must be generic_gaussian or sfcw_radar");

    spec.trials = config.get_int("experiment.trials", spec.trials);
    spec.base_seed = static_cast<std::uint64_t>(
        config.get_int64("experiment.base_seed", static_cast<long long>(spec.base_seed)));
    spec.snr_db = config.get_double("experiment.snr_db", spec.snr_db);
    spec.ratios = config.get_double_list("experiment.ratios", spec.ratios);
    spec.out_dir = config.get_string("experiment.out_dir", spec.out_dir);
    if (config.has("experiment.methods")) {
        spec.methods.clear();
        for (const auto& name : config.get_string_list("experiment.methods"))
            spec.methods.push_back(method_from_name(name));
    }

    spec.m = config.get_int("generic.num_antennas", spec.m);
    spec.n = config.get_int("generic.num_freqs", spec.n);
    spec.q = config.get_int("generic.grid_size", spec.q);
    spec.rank = config.get_int("generic.rank", spec.rank);
    spec.num_defects = config.get_int("generic.num_defects", spec.num_defects);

    RadarConfig& r = spec.radar;
    r.num_antennas = config.get_int("radar.num_antennas", r.num_antennas);
    r.num_freqs = config.get_int("radar.num_freqs", r.num_freqs);
    r.carrier_freq_hz = config.get_double("radar.carrier_freq_hz", r.carrier_freq_hz);
    r.bandwidth_hz = config.get_double("radar.bandwidth_hz", r.bandwidth_hz);
    r.antenna_spacing_m = config.get_double("radar.antenna_spacing_m", r.antenna_spacing_m);
    r.standoff_m = config.get_double("radar.standoff_m", r.standoff_m);
    r.layer_thickness_m = config.get_double("radar.layer_thickness_m", r.layer_thickness_m);
    r.layer_rel_permittivity =
        config.get_double("radar.layer_rel_permittivity", r.layer_rel_permittivity);
    r.num_reflections = config.get_int("radar.num_reflections", r.num_reflections);
    r.grid_rows = config.get_int("radar.grid_rows", r.grid_rows);
    r.grid_cols = config.get_int("radar.grid_cols", r.grid_cols);
    r.grid_depth_m = config.get_double("radar.grid_depth_m", r.grid_depth_m);
    r.grid_width_m = config.get_double("radar.grid_width_m", r.grid_width_m);
    r.propagation_speed = config.get_double("radar.propagation_speed", r.propagation_speed);
    r.grid_delay_in_material =
        config.get_bool("radar.grid_delay_in_material", r.grid_delay_in_material);
    spec.radar_num_defects = config.get_int("radar.num_defects", spec.radar_num_defects);
    spec.defect_cells = config.get_int_list("radar.defect_cells", spec.defect_cells);
    spec.layer_to_defect_ratio =
        config.get_double("radar.layer_to_defect_ratio", spec.layer_to_defect_ratio);
    spec.layer_decay = config.get_double("radar.layer_decay", spec.layer_decay);

    spec.sp_rank = config.get_int("baselines.sp_rank", spec.sp_rank);

    SolverConfig& s = spec.solver;
    s.beta_l = config.get_double("solver.beta_l", s.beta_l);
    s.beta_s = config.get_double("solver.beta_s", s.beta_s);
    s.delta = config.get_double("solver.delta", s.delta);
    s.rho0 = config.get_double("solver.rho0", s.rho0);
    s.rho_growth = config.get_double("solver.rho_growth", s.rho_growth);
    s.rho_max = config.get_double("solver.rho_max", s.rho_max);
    s.epsilon = config.get_double("solver.epsilon", s.epsilon);
    s.max_outer = config.get_int("solver.max_outer", s.max_outer);
    s.inner_loops = config.get_int("solver.inner_loops", s.inner_loops);
    s.reweighting = config.get_bool("solver.reweighting", s.reweighting);
    s.l_update_tol = config.get_double("solver.l_update_tol", s.l_update_tol);
    s.l_update_cap = config.get_int("solver.l_update_cap", s.l_update_cap);
    s.s_update_tol = config.get_double("solver.s_update_tol", s.s_update_tol);
    s.s_update_cap = config.get_int("solver.s_update_cap", s.s_update_cap);
    s.power_iterations = config.get_int("solver.power_iterations", s.power_iterations);
    s.power_tol = config.get_double("solver.power_tol", s.power_tol);

    for (int idx : config.get_int_list("mask.indices", {}))
        spec.mask_indices.push_back(static_cast<Eigen::Index>(idx));

    config.reject_unknown();
    spec.validate();
    return spec;
}

ExperimentSpec load_spec(const std::string& path) {
    return spec_from_config(ConfigFile::parse_file(path));
}

std::uint64_t trial_seed(const ExperimentSpec& spec, int trial) {
    return spec.base_seed + static_cast<std::uint64_t>(trial);
}

std::uint64_t mask_seed(std::uint64_t trial_seed_value, int ratio_index) {
    return trial_seed_value * 1000003ULL + static_cast<std::uint64_t>(ratio_index);
}

Instance make_instance(const ExperimentSpec& spec, std::uint64_t seed, const CMat* dict) {
    Instance inst;
    if (spec.kind == ExperimentSpec::Kind::generic_gaussian) {
        GenericInstance g =
            generic_gaussian_instance(spec.m, spec.n, spec.q, spec.rank, spec.num_defects, seed);
        inst.l_t = std::move(g.l_t);
        inst.a = std::move(g.a);
        inst.s_t = std::move(g.s_t);
        const CVec d_vec = inst.a * inst.s_t;
        const double signal = (vec(inst.l_t) + d_vec).squaredNorm();
        Rng noise_rng(seed, kNoiseStream);
        const CMat z = scaled_noise(std::isfinite(spec.snr_db) ? signal : 1.0, spec.m, spec.n,
                                    spec.snr_db, noise_rng);
        inst.y_full = inst.l_t + unvec(d_vec, spec.m, spec.n) + z;
    } else {
        SteeringDictionary sd;
        if (dict) {
            sd.a = *dict;
            sd.num_antennas = spec.radar.num_antennas;
            sd.num_freqs = spec.radar.num_freqs;
        } else {
            sd = build_dictionary(spec.radar);
        }
        inst.a = sd.a;

        Rng scene_rng(seed, kSceneStream);
        DefectScene scene;
        if (spec.defect_cells.empty()) {
            scene = random_defect_scene(spec.radar.grid_size(), spec.radar_num_defects, scene_rng);
        } else {
            for (int cell : spec.defect_cells) scene.defects.push_back({cell, scene_rng.random_phase()});
        }
        inst.s_t = scene.sparse_vector(spec.radar.grid_size());

        Rng layer_rng(seed, kLayerStream);
        LayerCoefficients coeffs = build_layer_delays(spec.radar);
        coeffs.alpha = random_layer_amplitudes(spec.radar.num_reflections,
                                               spec.layer_to_defect_ratio, spec.layer_decay,
                                               layer_rng);
        inst.l_t = layer_response(spec.radar, coeffs);

        const CMat d = defect_response(sd, scene);
        const double signal = (inst.l_t + d).squaredNorm();
        Rng noise_rng(seed, kNoiseStream);
        const CMat z =
            scaled_noise(std::isfinite(spec.snr_db) ? signal : 1.0, spec.radar.num_antennas,
                         spec.radar.num_freqs, spec.snr_db, noise_rng);
        inst.y_full = inst.l_t + d + z;
    }
    inst.y_vec = vec(inst.y_full);
    inst.support = DefectSupport::from_sparse(inst.s_t);
    return inst;
}

std::vector<Table1Row> compute_table1(const ExperimentSpec& spec) {
    spec.validate();

    std::vector<Method> baseline_methods, solver_methods;
    for (Method m : spec.methods)
        (is_solver_method(m) ? solver_methods : baseline_methods).push_back(m);

    const std::size_t slots =
        baseline_methods.size() + spec.ratios.size() * solver_methods.size();
    std::vector<std::vector<double>> tcr(slots, std::vector<double>(static_cast<std::size_t>(spec.trials)));

    const CMat dict = spec.kind == ExperimentSpec::Kind::sfcw_radar
                          ? build_dictionary(spec.radar).a
                          : CMat();

    run_parallel(spec.trials, [&](int trial) {
        const std::uint64_t seed = trial_seed(spec, trial);
        const Instance inst = make_instance(spec, seed, dict.size() ? &dict : nullptr);
        std::size_t slot = 0;
        for (Method m : baseline_methods)
            tcr[slot++][static_cast<std::size_t>(trial)] = baseline_tcr(m, inst, spec);
        for (std::size_t ri = 0; ri < spec.ratios.size(); ++ri) {
            const SelectionMask mask = random_mask(inst.y_vec.size(), spec.ratios[ri],
                                                   mask_seed(seed, static_cast<int>(ri)));
            const CVec y_cs = mask.apply(inst.y_vec);
            for (Method m : solver_methods) {
                const RecoveryResult res = solve(y_cs, mask, inst.a, spec.rows(), spec.cols(),
                                                 method_variant(m), spec.solver);
                tcr[slot++][static_cast<std::size_t>(trial)] =
                    capped_tcr_db(tcr_db(res.s, inst.support));
            }
        }
    });

    std::vector<Table1Row> rows;
    rows.reserve(slots);
    std::size_t slot = 0;
    for (Method m : baseline_methods) {
        const double mean = mean_of(tcr[slot]);
        rows.push_back({1.0, m, mean, sample_std(tcr[slot], mean), spec.trials});
        ++slot;
    }
    for (std::size_t ri = 0; ri < spec.ratios.size(); ++ri) {
        for (Method m : solver_methods) {
            const double mean = mean_of(tcr[slot]);
            rows.push_back({spec.ratios[ri], m, mean, sample_std(tcr[slot], mean), spec.trials});
            ++slot;
        }
    }
    return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
    // TCR values above the +inf sentinel are capped at 300 dB before averaging.
    std::string out = "ratio,method,mean_tcr_db,std_tcr_db,trials\n";
    for (const auto& row : rows) {
        out += format_g6(row.ratio) + "," + method_name(row.method) + "," +
               format_g6(row.mean_tcr_db) + "," + format_g6(row.std_tcr_db) + "," +
               std::to_string(row.trials) + "\n";
    }
    return out;
}

std::string run_table1(const ExperimentSpec& spec) {
    const auto rows = compute_table1(spec);
    std::filesystem::create_directories(spec.out_dir);
    const std::string path = spec.out_dir + "/table1.csv";
    write_text_file(path, table1_csv(rows));
    return path;
}

std::vector<TraceRow> compute_nmse_traces(const ExperimentSpec& spec) {
    spec.validate();
    for (Method m : spec.methods)
        if (!is_solver_method(m))
            throw std::invalid_argument(
                "compute_nmse_traces: only iterative solver methods have traces (got " +
                method_name(m) + ")");

    const std::size_t slots = spec.ratios.size() * spec.methods.size();
    std::vector<std::vector<std::vector<double>>> nmse_l(slots), nmse_s(slots);
    for (auto& v : nmse_l) v.resize(static_cast<std::size_t>(spec.trials));
    for (auto& v : nmse_s) v.resize(static_cast<std::size_t>(spec.trials));

    const CMat dict = spec.kind == ExperimentSpec::Kind::sfcw_radar
                          ? build_dictionary(spec.radar).a
                          : CMat();

    run_parallel(spec.trials, [&](int trial) {
        const std::uint64_t seed = trial_seed(spec, trial);
        const Instance inst = make_instance(spec, seed, dict.size() ? &dict : nullptr);
        const GroundTruth gt{inst.l_t, inst.s_t};
        std::size_t slot = 0;
        for (std::size_t ri = 0; ri < spec.ratios.size(); ++ri) {
            const SelectionMask mask = random_mask(inst.y_vec.size(), spec.ratios[ri],
                                                   mask_seed(seed, static_cast<int>(ri)));
            const CVec y_cs = mask.apply(inst.y_vec);
            for (Method m : spec.methods) {
                const RecoveryResult res = solve(y_cs, mask, inst.a, spec.rows(), spec.cols(),
                                                 method_variant(m), spec.solver, &gt);
                nmse_l[slot][static_cast<std::size_t>(trial)] = res.nmse_l_history;
                nmse_s[slot][static_cast<std::size_t>(trial)] = res.nmse_s_history;
                ++slot;
            }
        }
    });

    // Early-terminated trials hold their last value for the remaining
    // iterations so that per-t averages stay defined.
    auto average_traces = [&](const std::vector<std::vector<double>>& per_trial) {
        std::size_t len = 0;
        for (const auto& h : per_trial) len = std::max(len, h.size());
        std::vector<double> mean(len, 0.0);
        for (const auto& h : per_trial)
            for (std::size_t t = 0; t < len; ++t)
                mean[t] += t < h.size() ? h[t] : h.back();
        for (double& v : mean) v /= static_cast<double>(per_trial.size());
        return mean;
    };

    std::vector<TraceRow> rows;
    std::size_t slot = 0;
    for (std::size_t ri = 0; ri < spec.ratios.size(); ++ri) {
        for (Method m : spec.methods) {
            const auto mean_l = average_traces(nmse_l[slot]);
            const auto mean_s = average_traces(nmse_s[slot]);
            for (std::size_t t = 0; t < mean_l.size(); ++t)
                rows.push_back({m, spec.ratios[ri], static_cast<int>(t) + 1, mean_l[t], mean_s[t]});
            ++slot;
        }
    }
    return rows;
}

std::string traces_csv(const std::vector<TraceRow>& rows) {
    std::string out = "method,ratio,t,nmse_l,nmse_s\n";
    for (const auto& row : rows) {
        out += method_name(row.method) + "," + format_g6(row.ratio) + "," +
               std::to_string(row.t) + "," + format_g6(row.nmse_l) + "," + format_g6(row.nmse_s) +
               "\n";
    }
    return out;
}

std::string run_nmse_traces(const ExperimentSpec& spec) {
    const auto rows = compute_nmse_traces(spec);
    std::filesystem::create_directories(spec.out_dir);
    const std::string path = spec.out_dir + "/nmse_traces.csv";
    write_text_file(path, traces_csv(rows));
    return path;
}

RadarImageResult compute_radar_image(const ExperimentSpec& spec, std::uint64_t seed) {
    spec.validate();
    if (spec.kind != ExperimentSpec::Kind::sfcw_radar)
        throw std::invalid_argument("compute_radar_image: spec kind must be sfcw_radar");

    const CMat dict = build_dictionary(spec.radar).a;
    const Instance inst = make_instance(spec, seed, &dict);
    const double ratio = spec.ratios.front();

    RadarImageResult result;
    result.truth_image = magnitude_image(inst.s_t);
    result.support = inst.support;

    for (Method m : spec.methods) {
        RadarImageEntry entry;
        entry.method = m;
        if (is_solver_method(m)) {
            const SelectionMask mask = random_mask(inst.y_vec.size(), ratio, mask_seed(seed, 0));
            const CVec y_cs = mask.apply(inst.y_vec);
            const RecoveryResult res = solve(y_cs, mask, inst.a, spec.rows(), spec.cols(),
                                             method_variant(m), spec.solver);
            entry.image = magnitude_image(res.s);
            entry.ratio = ratio;
            entry.tcr = capped_tcr_db(tcr_db(res.s, inst.support));
        } else {
            const ClutterRemovalOutput out =
                m == Method::sf ? spatial_filter(inst.y_full, inst.a)
                                : subspace_projection(inst.y_full, spec.effective_sp_rank(), inst.a);
            entry.image = magnitude_image(out.s_img);
            entry.ratio = 1.0;
            entry.tcr = capped_tcr_db(tcr_db(out.s_img, inst.support));
        }
        result.entries.push_back(std::move(entry));
    }
    return result;
}

void run_radar_image(const ExperimentSpec& spec) {
    const RadarImageResult result = compute_radar_image(spec, spec.base_seed);
    std::filesystem::create_directories(spec.out_dir);
    const int rows = spec.radar.grid_rows;
    const int cols = spec.radar.grid_cols;

    const RMat truth = reshape_image(result.truth_image, rows, cols);
    write_text_file(spec.out_dir + "/image_truth.csv", image_csv(truth));
    write_pgm(spec.out_dir + "/image_truth.pgm", truth);

    // TCR values are capped at 300 dB (the +inf sentinel is not representable).
    std::string report = "method,ratio,tcr_db\n";
    for (const auto& entry : result.entries) {
        const RMat img = reshape_image(entry.image, rows, cols);
        const std::string base = spec.out_dir + "/image_" + method_name(entry.method);
        write_text_file(base + ".csv", image_csv(img));
        write_pgm(base + ".pgm", img);
        report += method_name(entry.method) + "," + format_g6(entry.ratio) + "," +
                  format_g6(entry.tcr) + "\n";
    }
    write_text_file(spec.out_dir + "/tcr_report.csv", report);
}

std::vector<int> top_cells(const RVec& image, int count) {
    std::vector<int> order(static_cast<std::size_t>(image.size()));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return image(a) > image(b); });
    order.resize(static_cast<std::size_t>(std::min<std::size_t>(order.size(),
                                                                static_cast<std::size_t>(count))));
    return order;
}

int worker_count() {
    if (const char* env = std::getenv("WORKER_COUNT")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace lrps
