// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lrps/metrics.hpp"

#include "lrps/rng.hpp"
#include "lrps/scene_model.hpp"

#include <doctest.h>

#include <cmath>

using namespace lrps;

TEST_CASE("tcr matches a hand evaluation") {
    DefectSupport support{{0}, 4};
    CVec s(4);
    s << cxd(2, 0), cxd(1, 0), cxd(1, 0), cxd(1, 0);
    // ((Q - N_d)/N_d) * 4 / 3 = 3 * 4/3 = 4
    CHECK(tcr_db(s, support) == doctest::Approx(10.0 * std::log10(4.0)).epsilon(1e-12));
}

TEST_CASE("tcr on a clean indicator is the infinity sentinel") {
    DefectSupport support{{1, 3}, 6};
    CVec s = CVec::Zero(6);
    s(1) = cxd(1, 0);
    s(3) = cxd(1, 0);
    CHECK(std::isinf(tcr_db(s, support)));
    CHECK(capped_tcr_db(tcr_db(s, support)) == kTcrCapDb);
}

TEST_CASE("tcr is scale invariant") {
    Rng rng(4);
    DefectSupport support{{2, 5, 9}, 16};
    CVec s(16);
    for (Eigen::Index i = 0; i < 16; ++i) s(i) = rng.circular_normal();
    const double base = tcr_db(s, support);
    for (const cxd c : {cxd(2.5, 0.0), cxd(0.0, -3.0), cxd(1.5, 1.5)})
        CHECK(tcr_db(c * s, support) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("tcr rejects degenerate supports") {
    CHECK_THROWS_AS(tcr_db(CVec::Zero(4), DefectSupport{{}, 4}), std::invalid_argument);
    CHECK_THROWS_AS(tcr_db(CVec::Zero(4), DefectSupport{{0, 1, 2, 3}, 4}), std::invalid_argument);
}

TEST_CASE("nmse basics") {
    CMat l_t(2, 2);
    l_t << cxd(1, 0), cxd(2, 0), cxd(3, 0), cxd(4, 0);
    CHECK(nmse_lowrank(l_t, l_t) == 0.0);
    CHECK(nmse_lowrank(CMat::Zero(2, 2), l_t) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(nmse_lowrank(2.0 * l_t, l_t) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(nmse_lowrank(l_t, CMat::Zero(2, 2)), std::invalid_argument);

    CVec s_t(3);
    s_t << cxd(1, 0), cxd(0, 2), cxd(-1, 0);
    CHECK(nmse_sparse(s_t, s_t) == 0.0);
    CHECK(nmse_sparse(CVec::Zero(3), s_t) == doctest::Approx(1.0).epsilon(1e-15));

    // Exact error-energy ratio.
    CVec e(3);
    e << cxd(0.1, 0), cxd(0, 0), cxd(0, 0);
    const double expected = e.squaredNorm() / s_t.squaredNorm();
    CHECK(nmse_sparse(s_t + e, s_t) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("nmse scale covariance") {
    Rng rng(6);
    CMat l_t(3, 4);
    for (Eigen::Index i = 0; i < 3; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) l_t(i, j) = rng.circular_normal();
    for (const cxd c : {cxd(0.5, 0.0), cxd(2.0, 1.0)})
        CHECK(nmse_lowrank(c * l_t, l_t) == doctest::Approx(std::norm(c - 1.0)).epsilon(1e-12));
}

TEST_CASE("snr definition and round trip") {
    CMat l(1, 2);
    l << cxd(6, 0), cxd(8, 0);  // |vec(L)|^2 = 100
    CVec d = CVec::Zero(2);
    CMat z(1, 2);
    z << cxd(1, 0), cxd(0, 0);
    CHECK(snr_db(l, d, z) == doctest::Approx(20.0).epsilon(1e-12));
    const CMat tenth = z / z.norm() * (l.norm() / 10.0);  // noise at a tenth of the signal norm
    CHECK(snr_db(l, d, tenth) == doctest::Approx(20.0).epsilon(1e-9));
    CHECK(snr_db(z, d, z) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(snr_db(l, d, CMat::Zero(1, 2)), std::invalid_argument);

    RadarConfig config;
    config.num_antennas = 3;
    config.num_freqs = 5;
    config.grid_rows = 2;
    config.grid_cols = 2;
    LayerCoefficients coeffs = build_layer_delays(config);
    Rng rng(8);
    coeffs.alpha = random_layer_amplitudes(config.num_reflections, 10.0, 0.3, rng);
    const DefectScene scene = random_defect_scene(config.grid_size(), 1, rng);
    const MeasurementSet set = synthesize(config, coeffs, scene, 20.0, 5);
    CHECK(snr_db(set.l, vec(set.d), set.z) == doctest::Approx(20.0).epsilon(1e-9));
}
