// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "lrps/rng.hpp"
#include "lrps/types.hpp"

#include <cstdint>
#include <vector>

namespace lrps {

/// Geometry, frequency plan and grid discretization of the stepped-frequency
/// continuous-wave acquisition. M transceivers sit on a line parallel to the
/// front face of a single-layered structure; the imaging grid spans a
/// rectangular region starting at that face (rows = downrange cells,
/// columns = crossrange cells).
struct RadarConfig {
    int num_antennas = 10;             // M
    int num_freqs = 20;                // N
    double carrier_freq_hz = 300e9;    // fc
    double bandwidth_hz = 5e9;         // B
    double antenna_spacing_m = 0.0;    // <= 0: half carrier wavelength
    double standoff_m = 1.5;           // array to layer front face
    double layer_thickness_m = 0.05;
    double layer_rel_permittivity = 3.0;
    int num_reflections = 1;           // G internal reflections
    int grid_rows = 16;
    int grid_cols = 16;
    double grid_depth_m = 0.5;
    double grid_width_m = 0.5;
    double propagation_speed = 3.0e8;  // c
    // Grid delays use free-space speed by default; enabling this slows the
    // grid path by sqrt(eps_r) (no refraction model either way).
    bool grid_delay_in_material = false;

    int grid_size() const { return grid_rows * grid_cols; }
    double wavelength() const { return propagation_speed / carrier_freq_hz; }
    double spacing() const {
        return antenna_spacing_m > 0 ? antenna_spacing_m : 0.5 * wavelength();
    }
    /// Crossrange position of antenna m (array centered on the grid).
    double antenna_x(int m) const {
        return (m - 0.5 * (num_antennas - 1)) * spacing();
    }
    void validate() const;  // throws std::invalid_argument
};

/// Reflection amplitudes and per-antenna round-trip delays of the layered
/// structure; alpha and each row of tau have G+1 entries.
struct LayerCoefficients {
    std::vector<cxd> alpha;
    RMat tau;  // M x (G+1), seconds
};

struct Defect {
    int cell = 0;
    cxd amplitude{1.0, 0.0};
};

struct DefectScene {
    std::vector<Defect> defects;

    /// Ground-truth sparse vector s_T of the given length.
    CVec sparse_vector(int grid_size) const;
    std::vector<int> cells() const;
    void validate(int grid_size) const;
};

/// MN x Q matrix of unit-modulus phasors; row k = m*N + n holds
/// exp(-j 2 pi f_n tau_{m,q}) across grid cells q.
struct SteeringDictionary {
    CMat a;
    int num_antennas = 0;
    int num_freqs = 0;
};

struct MeasurementSet {
    CMat l, d, z, y;     // M x N each, y = l + d + z
    double snr_db = 0.0; // achieved SNR (+inf when noiseless)
};

/// Band centers f_n = fc - B/2 + (n - 1/2) B/N, n = 1..N.
std::vector<double> frequency_grid(const RadarConfig& config);

/// Broadside slab delays tau_{m,g} = 2 (standoff + (g-1) d sqrt(eps_r)) / c,
/// identical across antennas. alpha is left empty.
LayerCoefficients build_layer_delays(const RadarConfig& config);

/// L[m,n] = sum_g alpha_g exp(-j 2 pi f_n tau_{m,g}).
CMat layer_response(const RadarConfig& config, const LayerCoefficients& coeffs);

/// Round-trip delays between every antenna and every grid cell center, M x Q.
RMat grid_delays(const RadarConfig& config);

/// Entry (m*N + n, q) = exp(-j 2 pi freqs[n] tau(m, q)).
CMat dictionary_from_delays(const std::vector<double>& freqs, const RMat& tau);

SteeringDictionary build_dictionary(const RadarConfig& config);

/// D with vec(D) = A s_T.
CMat defect_response(const SteeringDictionary& dict, const DefectScene& scene);

/// Complete measurement: Y = L + D + Z with Z scaled so that
/// |vec(L) + vec(D)|^2 / |Z|_F^2 matches snr_db exactly. Pass +inf for a
/// noiseless set. Deterministic per seed.
MeasurementSet synthesize(const RadarConfig& config, const LayerCoefficients& coeffs,
                          const DefectScene& scene, double snr_db, std::uint64_t seed);

/// Unit-variance circular Gaussian noise rescaled to the requested SNR
/// against the given signal energy.
CMat scaled_noise(double signal_energy, int rows, int cols, double snr_db, Rng& rng);

/// G+1 random-phase amplitudes with |alpha_1| = peak and geometric decay
/// across internal reflections.
std::vector<cxd> random_layer_amplitudes(int num_reflections, double peak, double decay,
                                         Rng& rng);

/// num_defects distinct cells with unit-magnitude random-phase amplitudes.
DefectScene random_defect_scene(int grid_size, int num_defects, Rng& rng);

/// Ground truth of one generic test instance: real i.i.d. N(0,1) dictionary,
/// rank-limited factor-product L_T and an N_d-sparse s_T, stored as complex
/// with zero imaginary parts.
struct GenericInstance {
    CMat l_t;  // M x N
    CMat a;    // MN x Q
    CVec s_t;  // Q
};

GenericInstance generic_gaussian_instance(int m, int n, int q, int rank, int num_defects,
                                          std::uint64_t seed);

}  // namespace lrps
