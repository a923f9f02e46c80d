// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lrps/scene_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

namespace lrps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cxd phasor(double freq_hz, double tau_s) {
    const double phase = -kTwoPi * freq_hz * tau_s;
    return {std::cos(phase), std::sin(phase)};
}

// Stream tags for the per-seed generators.
constexpr std::uint64_t kNoiseStream = 0x6e6f6973ULL;
constexpr std::uint64_t kDictStream = 0x64696374ULL;
constexpr std::uint64_t kFactorStream = 0x66616374ULL;
constexpr std::uint64_t kSupportStream = 0x73757070ULL;
constexpr std::uint64_t kValueStream = 0x76616c75ULL;

std::vector<int> distinct_cells(int grid_size, int count, Rng& rng) {
    std::vector<int> cells(grid_size);
    for (int i = 0; i < grid_size; ++i) cells[i] = i;
    for (int i = 0; i < count; ++i) {
        const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(grid_size - i)));
        std::swap(cells[i], cells[j]);
    }
    cells.resize(count);
    std::sort(cells.begin(), cells.end());
    return cells;
}

}  // namespace

void RadarConfig::validate() const {
    if (num_antennas < 1) throw std::invalid_argument("RadarConfig: num_antennas must be >= 1");
    if (num_freqs < 1) throw std::invalid_argument("RadarConfig: num_freqs must be >= 1");
    if (grid_rows < 1 || grid_cols < 1)
        throw std::invalid_argument("RadarConfig: grid must have at least one cell");
    if (bandwidth_hz <= 0) throw std::invalid_argument("RadarConfig: bandwidth must be positive");
    if (carrier_freq_hz <= 0.5 * bandwidth_hz)
        throw std::invalid_argument("RadarConfig: carrier frequency must exceed B/2");
    if (layer_rel_permittivity < 1.0)
        throw std::invalid_argument("RadarConfig: relative permittivity must be >= 1");
    if (num_reflections < 0)
        throw std::invalid_argument("RadarConfig: num_reflections must be >= 0");
    if (propagation_speed <= 0)
        throw std::invalid_argument("RadarConfig: propagation speed must be positive");
    if (standoff_m < 0) throw std::invalid_argument("RadarConfig: standoff must be >= 0");
    if (layer_thickness_m < 0)
        throw std::invalid_argument("RadarConfig: layer thickness must be >= 0");
    if (grid_depth_m <= 0 || grid_width_m <= 0)
        throw std::invalid_argument("RadarConfig: grid extent must be positive");
}

CVec DefectScene::sparse_vector(int grid_size) const {
    validate(grid_size);
    CVec s = CVec::Zero(grid_size);
    for (const auto& d : defects) s(d.cell) += d.amplitude;
    return s;
}

std::vector<int> DefectScene::cells() const {
    std::vector<int> out;
    out.reserve(defects.size());
    for (const auto& d : defects) out.push_back(d.cell);
    return out;
}

void DefectScene::validate(int grid_size) const {
    std::set<int> seen;
    for (const auto& d : defects) {
        if (d.cell < 0 || d.cell >= grid_size)
            throw std::invalid_argument("DefectScene: cell index out of range");
        if (!seen.insert(d.cell).second)
            throw std::invalid_argument("DefectScene: duplicate cell index");
    }
    if (static_cast<int>(defects.size()) > grid_size)
        throw std::invalid_argument("DefectScene: more defects than grid cells");
}

std::vector<double> frequency_grid(const RadarConfig& config) {
    config.validate();
    const int n = config.num_freqs;
    const double band = config.bandwidth_hz / n;
    std::vector<double> freqs(n);
    for (int i = 0; i < n; ++i)
        freqs[i] = config.carrier_freq_hz - 0.5 * config.bandwidth_hz + (i + 0.5) * band;
    return freqs;
}

LayerCoefficients build_layer_delays(const RadarConfig& config) {
    config.validate();
    const int m = config.num_antennas;
    const int g1 = config.num_reflections + 1;
    const double slowness = std::sqrt(config.layer_rel_permittivity);
    LayerCoefficients coeffs;
    coeffs.tau.resize(m, g1);
    for (int g = 0; g < g1; ++g) {
        const double tau =
            2.0 * (config.standoff_m + g * config.layer_thickness_m * slowness) /
            config.propagation_speed;
        coeffs.tau.col(g).setConstant(tau);
    }
    return coeffs;
}

CMat layer_response(const RadarConfig& config, const LayerCoefficients& coeffs) {
    config.validate();
    const int m = config.num_antennas;
    const int n = config.num_freqs;
    const auto g1 = static_cast<Eigen::Index>(coeffs.alpha.size());
    if (coeffs.tau.rows() != m || coeffs.tau.cols() != g1)
        throw std::invalid_argument("layer_response: coefficient dimensions do not match config");
    const std::vector<double> freqs = frequency_grid(config);
    CMat l = CMat::Zero(m, n);
    for (int mi = 0; mi < m; ++mi)
        for (int ni = 0; ni < n; ++ni)
            for (Eigen::Index g = 0; g < g1; ++g)
                l(mi, ni) += coeffs.alpha[g] * phasor(freqs[ni], coeffs.tau(mi, g));
    return l;
}

RMat grid_delays(const RadarConfig& config) {
    config.validate();
    const int m = config.num_antennas;
    const int q = config.grid_size();
    const double cell_depth = config.grid_depth_m / config.grid_rows;
    const double cell_width = config.grid_width_m / config.grid_cols;
    const double speed = config.grid_delay_in_material
                             ? config.propagation_speed / std::sqrt(config.layer_rel_permittivity)
                             : config.propagation_speed;
    RMat tau(m, q);
    for (int mi = 0; mi < m; ++mi) {
        const double ax = config.antenna_x(mi);
        for (int qi = 0; qi < q; ++qi) {
            const int row = qi / config.grid_cols;
            const int col = qi % config.grid_cols;
            const double z = config.standoff_m + (row + 0.5) * cell_depth;
            const double x = -0.5 * config.grid_width_m + (col + 0.5) * cell_width;
            tau(mi, qi) = 2.0 * std::hypot(x - ax, z) / speed;
        }
    }
    return tau;
}

CMat dictionary_from_delays(const std::vector<double>& freqs, const RMat& tau) {
    const auto m = tau.rows();
    const auto q = tau.cols();
    const auto n = static_cast<Eigen::Index>(freqs.size());
    CMat a(m * n, q);
    for (Eigen::Index mi = 0; mi < m; ++mi)
        for (Eigen::Index ni = 0; ni < n; ++ni)
            for (Eigen::Index qi = 0; qi < q; ++qi)
                a(mi * n + ni, qi) = phasor(freqs[ni], tau(mi, qi));
    return a;
}

SteeringDictionary build_dictionary(const RadarConfig& config) {
    SteeringDictionary dict;
    dict.a = dictionary_from_delays(frequency_grid(config), grid_delays(config));
    dict.num_antennas = config.num_antennas;
    dict.num_freqs = config.num_freqs;
    return dict;
}

CMat defect_response(const SteeringDictionary& dict, const DefectScene& scene) {
    const int q = static_cast<int>(dict.a.cols());
    scene.validate(q);
    CVec d_vec = CVec::Zero(dict.a.rows());
    for (const auto& d : scene.defects) d_vec += d.amplitude * dict.a.col(d.cell);
    return unvec(d_vec, dict.num_antennas, dict.num_freqs);
}

CMat scaled_noise(double signal_energy, int rows, int cols, double snr_db, Rng& rng) {
    if (std::isinf(snr_db) && snr_db > 0) return CMat::Zero(rows, cols);
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("scaled_noise: SNR must be finite or +inf");
    if (signal_energy <= 0)
        throw std::invalid_argument("scaled_noise: SNR undefined for zero signal");
    CMat z(rows, cols);
    for (int mi = 0; mi < rows; ++mi)
        for (int ni = 0; ni < cols; ++ni)
            z(mi, ni) = rng.circular_normal();
    const double snr_lin = std::pow(10.0, snr_db / 10.0);
    const double scale = std::sqrt(signal_energy / (snr_lin * z.squaredNorm()));
    return scale * z;
}

MeasurementSet synthesize(const RadarConfig& config, const LayerCoefficients& coeffs,
                          const DefectScene& scene, double snr_db, std::uint64_t seed) {
    MeasurementSet set;
    set.l = layer_response(config, coeffs);
    set.d = defect_response(build_dictionary(config), scene);
    const double signal_energy = (set.l + set.d).squaredNorm();
    if (signal_energy == 0 && std::isfinite(snr_db))
        throw std::invalid_argument("synthesize: SNR undefined for an all-zero signal");
    Rng rng(seed, kNoiseStream);
    set.z = scaled_noise(std::isfinite(snr_db) ? signal_energy : 1.0, config.num_antennas,
                         config.num_freqs, snr_db, rng);
    set.y = set.l + set.d + set.z;
    set.snr_db = snr_db;
    return set;
}

std::vector<cxd> random_layer_amplitudes(int num_reflections, double peak, double decay,
                                         Rng& rng) {
    if (peak <= 0 || decay <= 0)
        throw std::invalid_argument("random_layer_amplitudes: peak and decay must be positive");
    std::vector<cxd> alpha(num_reflections + 1);
    double mag = peak;
    for (auto& a : alpha) {
        a = mag * rng.random_phase();
        mag *= decay;
    }
    return alpha;
}

DefectScene random_defect_scene(int grid_size, int num_defects, Rng& rng) {
    if (num_defects < 0 || num_defects > grid_size)
        throw std::invalid_argument("random_defect_scene: defect count out of range");
    DefectScene scene;
    for (int cell : distinct_cells(grid_size, num_defects, rng))
        scene.defects.push_back({cell, rng.random_phase()});
    return scene;
}

GenericInstance generic_gaussian_instance(int m, int n, int q, int rank, int num_defects,
                                          std::uint64_t seed) {
    if (m < 1 || n < 1 || q < 1)
        throw std::invalid_argument("generic_gaussian_instance: dimensions must be positive");
    if (rank < 0 || rank > std::min(m, n))
        throw std::invalid_argument("generic_gaussian_instance: rank out of range");
    if (num_defects < 0 || num_defects > q)
        throw std::invalid_argument("generic_gaussian_instance: defect count out of range");

    GenericInstance inst;

    Rng dict_rng(seed, kDictStream);
    inst.a.resize(static_cast<Eigen::Index>(m) * n, q);
    for (Eigen::Index i = 0; i < inst.a.rows(); ++i)
        for (Eigen::Index j = 0; j < q; ++j)
            inst.a(i, j) = cxd(dict_rng.normal(), 0.0);

    Rng factor_rng(seed, kFactorStream);
    RMat u(m, rank), v(n, rank);
    for (int i = 0; i < m; ++i)
        for (int r = 0; r < rank; ++r) u(i, r) = factor_rng.normal();
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < rank; ++r) v(i, r) = factor_rng.normal();
    inst.l_t = (u * v.transpose()).cast<cxd>();

    Rng support_rng(seed, kSupportStream);
    Rng value_rng(seed, kValueStream);
    inst.s_t = CVec::Zero(q);
    for (int cell : distinct_cells(q, num_defects, support_rng))
        inst.s_t(cell) = cxd(value_rng.normal(), 0.0);
    return inst;
}

}  // namespace lrps
