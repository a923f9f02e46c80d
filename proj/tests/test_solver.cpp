// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lrps/solver.hpp"

#include "lrps/metrics.hpp"
#include "lrps/rng.hpp"
#include "lrps/scene_model.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace lrps;

namespace {

CVec random_cvec(Eigen::Index size, Rng& rng) {
    CVec v(size);
    for (Eigen::Index i = 0; i < size; ++i) v(i) = rng.circular_normal();
    return v;
}

CMat random_cmat(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    CMat x(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) x(i, j) = rng.circular_normal();
    return x;
}

CMat random_hermitian(Eigen::Index dim, Rng& rng) {
    return hermitian_part(random_cmat(dim, dim, rng));
}

}  // namespace

TEST_CASE("weighted soft threshold") {
    CHECK(weighted_soft_threshold(cxd(3, 0), 1.0, 1.0) == cxd(2, 0));
    CHECK(weighted_soft_threshold(cxd(-0.5, 0), 2.0, 1.0) == cxd(0, 0));
    CHECK(weighted_soft_threshold(cxd(0, 0), 1.0, 1.0) == cxd(0, 0));
    for (double theta : {0.0, 0.7, 2.1, -1.3}) {
        const cxd v = 2.0 * cxd(std::cos(theta), std::sin(theta));
        const cxd out = weighted_soft_threshold(v, 1.0, 0.5);
        CHECK(std::abs(out - 1.5 * cxd(std::cos(theta), std::sin(theta))) < 1e-14);
    }
}

TEST_CASE("weighted soft threshold minimizes the scalar prox objective") {
    // Dense grid search over real scalars.
    for (const auto& [v, w, tau] : std::vector<std::tuple<double, double, double>>{
             {2.0, 1.0, 1.0}, {-1.5, 0.5, 2.0}, {0.3, 2.0, 0.25}, {4.0, 0.0, 10.0}}) {
        const cxd ours = weighted_soft_threshold(cxd(v, 0), w, tau);
        auto objective = [&](double x) { return tau * w * std::abs(x) + 0.5 * (x - v) * (x - v); };
        double best = std::numeric_limits<double>::infinity();
        for (double x = -6.0; x <= 6.0; x += 1e-4) best = std::min(best, objective(x));
        CHECK(objective(ours.real()) <= best + 1e-7);
        CHECK(std::abs(ours.imag()) == 0.0);
    }
}

TEST_CASE("sparse weight update") {
    CHECK((update_ws(CVec::Zero(5), 1.0) - RVec::Ones(5)).norm() == 0.0);

    CVec s(2);
    s << cxd(3, 0), cxd(0, 0);
    const RVec w = update_ws(s, 1.0);
    CHECK(w(0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(w(1) == doctest::Approx(1.0).epsilon(1e-15));

    Rng rng(17);
    const double delta = 0.37;
    const CVec r = random_cvec(32, rng);
    const RVec wr = update_ws(r, delta);
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        CHECK(wr(i) > 0.0);
        CHECK(wr(i) <= 1.0 / delta + 1e-15);
        for (Eigen::Index j = 0; j < r.size(); ++j)
            if (std::abs(r(i)) > std::abs(r(j))) CHECK(wr(i) < wr(j));
    }
}

TEST_CASE("low-rank weight update maps eigenvalues through the decay") {
    SUBCASE("zero matrices give identity weights") {
        auto [w1, w2] = update_weights_lr(CMat::Zero(3, 3), CMat::Zero(4, 4), 1.0);
        CHECK((w1 - CMat::Identity(3, 3)).norm() <= 1e-12);
        CHECK((w2 - CMat::Identity(4, 4)).norm() <= 1e-12);
    }
    SUBCASE("known eigenvalues") {
        // L0 with eigenvalues (3, 1) against delta = 1 yields (0.25, 0.5).
        Rng rng(23);
        const CMat g = random_cmat(2, 2, rng);
        Eigen::HouseholderQR<CMat> qr(g);
        const CMat u = qr.householderQ();
        RVec lam(2);
        lam << 3.0, 1.0;
        const CMat l0 = u * lam.asDiagonal() * u.adjoint();
        auto [w1, w2] = update_weights_lr(l0, CMat::Zero(2, 2), 1.0);
        RVec gamma(2);
        gamma << 0.25, 0.5;
        const CMat expected = u * gamma.asDiagonal() * u.adjoint();
        CHECK((w1 - expected).norm() <= 1e-10);
    }
    SUBCASE("commutation, hermiticity and spectral range") {
        Rng rng(29);
        const double delta = 0.8;
        for (int trial = 0; trial < 25; ++trial) {
            const CMat l0 = random_hermitian(5, rng);
            const CMat r = random_hermitian(3, rng);
            auto [w1, w2] = update_weights_lr(l0, r, delta);
            CHECK(is_hermitian(w1, 1e-10));
            CHECK(is_hermitian(w2, 1e-10));
            CHECK((w1 * l0 - l0 * w1).norm() <= 1e-8 * std::max(1.0, l0.norm()));
            CHECK((w2 * r - r * w2).norm() <= 1e-8 * std::max(1.0, r.norm()));
            Eigen::SelfAdjointEigenSolver<CMat> eig(w1);
            CHECK(eig.eigenvalues().minCoeff() > 0.0);
            CHECK(eig.eigenvalues().maxCoeff() <= 1.0 / delta + 1e-12);
        }
    }
}

TEST_CASE("dual update is the exact affine step") {
    Rng rng(41);
    const int m = 3, n = 4;
    const CMat a = random_cmat(12, 6, rng);
    const SelectionMask mask = random_mask(12, 0.5, 7);
    SolverConfig config;
    const CVec y = random_cvec(mask.k(), rng);
    Workspace ws = make_workspace(y, mask, a, m, n, config);

    SolverState state = init_state(ws, config);
    state.l = random_cmat(m, n, rng);
    state.s = random_cvec(6, rng);
    state.rho = 2.5;

    CVec fit = ws.masked_a * state.s - y;
    for (Eigen::Index i = 0; i < mask.k(); ++i)
        fit(i) += state.l(ws.mask_rows[i], ws.mask_cols[i]);

    SUBCASE("zero residual leaves u unchanged") {
        // Cancel the fit through s = 0 and L matching y on the mask.
        SolverState feasible = init_state(ws, config);
        feasible.l = unvec(mask.adjoint(y), m, n);
        feasible.rho = 3.0;
        const CVec u_before = feasible.u;
        update_u(feasible, ws);
        CHECK((feasible.u - u_before).norm() == 0.0);
    }
    SUBCASE("single step from zero dual equals rho times the residual") {
        state.u = CVec::Zero(mask.k());
        state.rho = 1.0;
        update_u(state, ws);
        CHECK((state.u - fit).norm() <= 1e-14 * (1.0 + fit.norm()));
    }
    SUBCASE("two steps accumulate") {
        state.u = CVec::Zero(mask.k());
        update_u(state, ws);
        update_u(state, ws);
        CHECK((state.u - 2.0 * state.rho * fit).norm() <= 1e-13 * (1.0 + fit.norm()));
    }
}

TEST_CASE("residual matches a dense evaluation") {
    Rng rng(53);
    const int m = 3, n = 5;
    const CMat a = random_cmat(15, 9, rng);
    const SelectionMask mask = random_mask(15, 0.6, 3);
    const CVec y = random_cvec(mask.k(), rng);
    const CMat l = random_cmat(m, n, rng);
    const CVec s = random_cvec(9, rng);

    CMat phi = CMat::Zero(mask.k(), 15);
    for (Eigen::Index i = 0; i < mask.k(); ++i) phi(i, mask.indices[i]) = cxd(1, 0);
    const double dense = (phi * vec(l) + phi * a * s - y).squaredNorm();
    CHECK(residual_sq(l, s, y, mask, a) == doctest::Approx(dense).epsilon(1e-12));

    CHECK(residual_sq(unvec(mask.adjoint(y), m, n), CVec::Zero(9), y, mask, a) <= 1e-24);
    CHECK(residual_sq(CMat::Zero(m, n), CVec::Zero(9), y, mask, a) ==
          doctest::Approx(y.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("low-rank update limit cases") {
    Rng rng(61);
    const int m = 3, n = 4;
    const CMat a = random_cmat(12, 5, rng);

    SUBCASE("huge trace penalty pushes the blocks to zero") {
        SolverConfig config;
        config.beta_l = 1e8;
        config.l_update_cap = 500;
        const SelectionMask mask = full_mask(12);
        Workspace ws = make_workspace(random_cvec(12, rng), mask, a, m, n, config);
        SolverState state = init_state(ws, config);
        state.rho = 1.0;
        update_l(state, ws, config);
        CHECK(state.l.norm() < 1e-4);
        CHECK(state.l0.norm() < 1e-4);
        CHECK(state.r.norm() < 1e-4);
    }
    SUBCASE("huge rho reproduces the measurements under full sampling") {
        SolverConfig config;
        config.l_update_cap = 2000;
        config.l_update_tol = 1e-9;
        const SelectionMask mask = full_mask(12);
        const CVec y = random_cvec(12, rng);
        Workspace ws = make_workspace(y, mask, a, m, n, config);
        SolverState state = init_state(ws, config);
        state.l.setZero();
        state.rho = 1e8;
        update_l(state, ws, config);
        CHECK((vec(state.l) - y).norm() <= 1e-3 * y.norm());
    }
    SUBCASE("the stacked block stays PSD and Hermitian") {
        SolverConfig config;
        const SelectionMask mask = random_mask(12, 0.5, 5);
        Workspace ws = make_workspace(random_cvec(mask.k(), rng), mask, a, m, n, config);
        SolverState state = init_state(ws, config);
        state.rho = 0.7;
        state.weights.w1 = update_weights_lr(random_hermitian(m, rng), CMat::Zero(n, n), 1.0).first;
        update_l(state, ws, config);
        CHECK(is_hermitian(state.l0, 1e-10));
        CHECK(is_hermitian(state.r, 1e-10));
        CMat block(m + n, m + n);
        block.topLeftCorner(m, m) = state.l0;
        block.topRightCorner(m, n) = state.l;
        block.bottomLeftCorner(n, m) = state.l.adjoint();
        block.bottomRightCorner(n, n) = state.r;
        Eigen::SelfAdjointEigenSolver<CMat> eig(block);
        CHECK(eig.eigenvalues().minCoeff() >= -1e-8 * std::max(1.0, block.norm()));
    }
}

TEST_CASE("sparse update limit cases") {
    Rng rng(71);

    SUBCASE("huge beta_s forces zero") {
        SolverConfig config;
        config.beta_s = 1e9;
        const int m = 2, n = 3;
        const CMat a = random_cmat(6, 4, rng);
        const SelectionMask mask = full_mask(6);
        Workspace ws = make_workspace(random_cvec(6, rng), mask, a, m, n, config);
        SolverState state = init_state(ws, config);
        state.rho = 1.0;
        state.s = random_cvec(4, rng);
        update_s(state, ws, config);
        CHECK(state.s.norm() == 0.0);
    }
    SUBCASE("identity operator reduces to the scalar shrink") {
        // Q = K with an identity compressed dictionary.
        SolverConfig config;
        config.s_update_cap = 2000;
        config.s_update_tol = 1e-14;
        const int m = 2, n = 2;
        const CMat a = CMat::Identity(4, 4);
        const SelectionMask mask = full_mask(4);
        const CVec y = random_cvec(4, rng);
        Workspace ws = make_workspace(y, mask, a, m, n, config);
        SolverState state = init_state(ws, config);
        state.l.setZero();
        state.rho = 1.0;
        update_s(state, ws, config);
        const double beta = config.effective_beta_s(m, n);
        for (Eigen::Index i = 0; i < 4; ++i) {
            const cxd expected = weighted_soft_threshold(y(i), 1.0, beta);
            CHECK(std::abs(state.s(i) - expected) < 1e-9);
        }
    }
}

TEST_CASE("solve handles degenerate and tiny instances") {
    Rng rng(83);

    SUBCASE("zero data returns zeros without iterating") {
        const CMat a = random_cmat(6, 4, rng);
        const SelectionMask mask = random_mask(6, 0.5, 2);
        SolverConfig config;
        const RecoveryResult res =
            solve(CVec::Zero(mask.k()), mask, a, 2, 3, Variant::lrpsr_m, config);
        CHECK(res.iterations == 0);
        CHECK(res.l.norm() == 0.0);
        CHECK(res.s.norm() == 0.0);
        CHECK(res.residual_history.empty());
    }
    SUBCASE("non-finite measurements are rejected") {
        const CMat a = random_cmat(6, 4, rng);
        const SelectionMask mask = full_mask(6);
        CVec y = random_cvec(6, rng);
        y(2) = cxd(std::numeric_limits<double>::quiet_NaN(), 0.0);
        SolverConfig config;
        CHECK_THROWS_AS(solve(y, mask, a, 2, 3, Variant::lrsr, config), std::invalid_argument);
    }
    SUBCASE("noiseless full-sampling demixing reaches small error") {
        const GenericInstance inst = generic_gaussian_instance(4, 4, 8, 1, 1, 5);
        const CVec y = vec(inst.l_t) + inst.a * inst.s_t;
        const SelectionMask mask = full_mask(16);
        SolverConfig config;
        const GroundTruth gt{inst.l_t, inst.s_t};
        for (Variant variant : {Variant::lrpsr_s, Variant::lrpsr_m}) {
            const RecoveryResult res = solve(y, mask, inst.a, 4, 4, variant, config, &gt);
            CHECK(nmse_lowrank(res.l, inst.l_t) < 1e-3);
            CHECK(nmse_sparse(res.s, inst.s_t) < 1e-3);
        }
    }
}

TEST_CASE("solve bookkeeping follows the schedule") {
    Rng rng(97);
    const GenericInstance inst = generic_gaussian_instance(4, 6, 10, 1, 2, 19);
    const CVec signal = vec(inst.l_t) + inst.a * inst.s_t;
    Rng noise_rng(19, 1);
    const CMat z = scaled_noise(signal.squaredNorm(), 4, 6, 10.0, noise_rng);
    const CVec y_full = signal + vec(z);
    const SelectionMask mask = random_mask(24, 0.75, 11);
    const CVec y = mask.apply(y_full);

    SolverConfig config;
    config.max_outer = 12;

    // This instance is overdetermined (Q + rank dof < K), so the residual
    // stays at the noise level and the run uses the full iteration budget.
    const RecoveryResult res = solve(y, mask, inst.a, 4, 6, Variant::lrpsr_s, config);
    CHECK(res.iterations == 12);
    CHECK(res.residual_history.size() == 12);
    CHECK(res.rho_history.size() == 12);
    for (int t = 0; t < 12; ++t) {
        const double expected = std::min(config.rho0 * std::pow(config.rho_growth, t),
                                         config.rho_max);
        CHECK(res.rho_history[static_cast<std::size_t>(t)] == expected);
    }
    CHECK(res.final_rho ==
          std::min(config.rho0 * std::pow(config.rho_growth, 12), config.rho_max));

    SUBCASE("loose epsilon stops after a single pass") {
        SolverConfig loose = config;
        loose.epsilon = 1e30;
        const RecoveryResult one = solve(y, mask, inst.a, 4, 6, Variant::lrpsr_s, loose);
        CHECK(one.iterations == 1);
    }
    SUBCASE("deterministic across calls") {
        const RecoveryResult again = solve(y, mask, inst.a, 4, 6, Variant::lrpsr_s, config);
        CHECK((again.l - res.l).norm() == 0.0);
        CHECK((again.s - res.s).norm() == 0.0);
    }
}

TEST_CASE("lrsr keeps identity weights and equals the manual unweighted loop") {
    Rng rng(101);
    const GenericInstance inst = generic_gaussian_instance(3, 4, 6, 1, 1, 7);
    const CVec signal = vec(inst.l_t) + inst.a * inst.s_t;
    Rng noise_rng(7, 2);
    const CMat z = scaled_noise(signal.squaredNorm(), 3, 4, 15.0, noise_rng);
    const CVec y_full = signal + vec(z);
    const SelectionMask mask = random_mask(12, 0.8, 3);
    const CVec y = mask.apply(y_full);

    SolverConfig config;
    config.max_outer = 6;

    const RecoveryResult via_solve = solve(y, mask, inst.a, 3, 4, Variant::lrsr, config);

    // Replay the same schedule with the public single-step operations and
    // weights pinned at identity.
    Workspace ws = make_workspace(y, mask, inst.a, 3, 4, config);
    SolverState state = init_state(ws, config);
    const WeightSet initial = state.weights;
    double res = residual_sq(state.l, state.s, ws);
    do {
        update_l(state, ws, config);
        update_s(state, ws, config);
        update_u(state, ws);
        state.t += 1;
        state.rho = std::min(config.rho0 * std::pow(config.rho_growth, state.t), config.rho_max);
        res = residual_sq(state.l, state.s, ws);
    } while (res > config.epsilon && state.t < config.max_outer);

    CHECK((state.weights.w1 - initial.w1).norm() == 0.0);
    CHECK((state.weights.w2 - initial.w2).norm() == 0.0);
    CHECK((state.weights.ws - initial.ws).norm() == 0.0);
    CHECK((via_solve.l - state.l).norm() == 0.0);
    // solve() reports s in caller coordinates.
    const CVec rescaled = state.s.cwiseProduct(ws.col_norms.cwiseInverse().cast<cxd>());
    CHECK((via_solve.s - rescaled).norm() == 0.0);
}
