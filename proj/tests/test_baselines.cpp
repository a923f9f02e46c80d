// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lrps/baselines.hpp"

#include "lrps/rng.hpp"
#include "lrps/scene_model.hpp"

#include <doctest.h>

using namespace lrps;

namespace {

CMat random_complex(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    CMat x(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) x(i, j) = rng.circular_normal();
    return x;
}

}  // namespace

TEST_CASE("spatial filter removes identical rows and centers columns") {
    Rng rng(21);
    const CMat a = random_complex(12, 6, rng);

    CMat clutter(4, 3);
    const Eigen::RowVectorXcd row = random_complex(1, 3, rng);
    for (int m = 0; m < 4; ++m) clutter.row(m) = row;
    const ClutterRemovalOutput out = spatial_filter(clutter, a);
    CHECK(out.d_hat.norm() <= 1e-14 * clutter.norm());
    CHECK(out.s_img.norm() <= 1e-12);

    const CMat y = random_complex(4, 3, rng);
    const ClutterRemovalOutput filtered = spatial_filter(y, a);
    // Column means vanish and match an explicit mean-subtraction pass.
    for (int n = 0; n < 3; ++n) {
        cxd mean{0, 0};
        for (int m = 0; m < 4; ++m) mean += y(m, n);
        mean /= 4.0;
        CHECK(std::abs(filtered.d_hat.col(n).sum()) < 1e-13);
        for (int m = 0; m < 4; ++m)
            CHECK(std::abs(filtered.d_hat(m, n) - (y(m, n) - mean)) < 1e-14);
    }

    // Idempotence.
    const ClutterRemovalOutput twice = spatial_filter(filtered.d_hat, a);
    CHECK((twice.d_hat - filtered.d_hat).norm() <= 1e-13 * filtered.d_hat.norm());

    CHECK_THROWS_AS(spatial_filter(random_complex(1, 3, rng), a), std::invalid_argument);
}

TEST_CASE("subspace projection truncates the SVD") {
    Rng rng(33);
    const CMat a = random_complex(20, 8, rng);

    // Pure rank-1 clutter disappears at r = 1.
    const CMat u = random_complex(4, 1, rng);
    const CMat v = random_complex(5, 1, rng);
    const CMat rank1 = u * v.adjoint();
    CHECK(subspace_projection(rank1, 1, a).d_hat.norm() <= 1e-12 * rank1.norm());

    // Separable instance: strong rank-1 clutter (sigma = 100) plus a weak
    // defect whose row and column spaces are orthogonal to the clutter dyad.
    // Removing the top triplet must keep the defect.
    const CVec cu = u / u.norm();
    const CVec cv = v / v.norm();
    const CMat clutter = 100.0 * cu * cv.adjoint();
    CMat d0 = random_complex(4, 5, rng);
    d0 = (CMat::Identity(4, 4) - cu * cu.adjoint()) * d0 *
         (CMat::Identity(5, 5) - cv * cv.adjoint());
    Eigen::JacobiSVD<CMat> dsvd(d0, Eigen::ComputeThinU | Eigen::ComputeThinV);
    CMat defect = CMat::Zero(4, 5);
    for (int i = 0; i < 3; ++i)
        defect += dsvd.matrixU().col(i) * dsvd.matrixV().col(i).adjoint();
    const ClutterRemovalOutput out = subspace_projection(clutter + defect, 1, a);
    CHECK((out.d_hat - defect).norm() / defect.norm() < 0.1);

    // Energy splits orthogonally between the kept and removed parts.
    const CMat general = random_complex(4, 5, rng);
    for (int r = 1; r < 4; ++r) {
        const ClutterRemovalOutput split = subspace_projection(general, r, a);
        const double total = general.squaredNorm();
        const double removed = (general - split.d_hat).squaredNorm();
        const double kept = split.d_hat.squaredNorm();
        CHECK(removed + kept == doctest::Approx(total).epsilon(1e-12));
    }

    // r = min(M,N)-1 keeps exactly the smallest singular triplet.
    Eigen::JacobiSVD<CMat> svd(general, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const ClutterRemovalOutput last = subspace_projection(general, 3, a);
    const CMat smallest = svd.singularValues()(3) * svd.matrixU().col(3) *
                          svd.matrixV().col(3).adjoint();
    CHECK((last.d_hat - smallest).norm() <= 1e-12 * general.norm());

    CHECK_THROWS_AS(subspace_projection(general, 0, a), std::invalid_argument);
    CHECK_THROWS_AS(subspace_projection(general, 4, a), std::invalid_argument);
}

TEST_CASE("back projection is a matched filter") {
    RadarConfig config;
    config.num_antennas = 6;
    config.num_freqs = 12;
    config.grid_rows = 8;
    config.grid_cols = 8;
    const SteeringDictionary dict = build_dictionary(config);

    CHECK(back_projection(CMat::Zero(6, 12), dict.a).norm() == 0.0);

    // The matched filter peaks at the true cell for a single clean defect.
    for (int cell : {0, 17, 40, 63}) {
        DefectScene scene;
        scene.defects.push_back({cell, cxd(1.0, 0.0)});
        const CMat d = defect_response(dict, scene);
        const CVec img = back_projection(d, dict.a);
        Eigen::Index peak;
        img.cwiseAbs().maxCoeff(&peak);
        CHECK(static_cast<int>(peak) == cell);
    }

    // Linearity.
    Rng rng(2);
    const CMat x = random_complex(6, 12, rng);
    const CMat y = random_complex(6, 12, rng);
    const cxd alpha(1.5, -0.5), beta(-0.25, 2.0);
    const CVec combined = back_projection(alpha * x + beta * y, dict.a);
    const CVec separate = alpha * back_projection(x, dict.a) + beta * back_projection(y, dict.a);
    CHECK((combined - separate).norm() <= 1e-12 * (1.0 + separate.norm()));
}
