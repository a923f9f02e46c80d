// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

// Shared oracle helpers for the unit and acceptance suites. The reference
// solvers here are deliberately different algorithms from the library's
// proximal-gradient paths: frozen interior-point solutions for the PSD
// sub-problem and plain coordinate descent for the weighted lasso.

#pragma once

#include "oracle/reference_solutions.hpp"

#include "lrps/rng.hpp"
#include "lrps/solver.hpp"

#include <cmath>
#include <vector>

namespace lrps_test {

using lrps::CMat;
using lrps::CVec;
using lrps::cxd;
using lrps::RVec;

inline CMat from_row_major(const std::vector<std::complex<double>>& data, int rows, int cols) {
    CMat x(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) x(i, j) = data[static_cast<std::size_t>(i) * cols + j];
    return x;
}

inline CVec from_vector(const std::vector<std::complex<double>>& data) {
    CVec v(static_cast<Eigen::Index>(data.size()));
    for (std::size_t i = 0; i < data.size(); ++i) v(static_cast<Eigen::Index>(i)) = data[i];
    return v;
}

// Weighted-lasso reference: complex coordinate descent with an inline
// scalar shrink.
inline CVec cd_weighted_lasso(const CMat& b, const CVec& r, const RVec& w, double lambda,
                              int sweeps) {
    CVec s = CVec::Zero(b.cols());
    CVec fit = -r;  // b*s - r
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            const double col_sq = b.col(j).squaredNorm();
            if (col_sq == 0.0) continue;
            const cxd grad = b.col(j).dot(fit);
            const cxd v = s(j) - grad / col_sq;
            const double mag = std::abs(v);
            const double kept = mag - lambda * w(j) / col_sq;
            const cxd s_new = kept > 0.0 && mag > 0.0 ? v * (kept / mag) : cxd{0.0, 0.0};
            if (s_new != s(j)) {
                fit += b.col(j) * (s_new - s(j));
                s(j) = s_new;
            }
        }
    }
    return s;
}

inline double lasso_objective(const CMat& b, const CVec& r, const RVec& w, double lambda,
                              const CVec& s) {
    double l1 = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) l1 += w(i) * std::abs(s(i));
    return 0.5 * (b * s - r).squaredNorm() + lambda * l1;
}

// Relative objective error of update_l against each frozen interior-point
// reference. The inner solver runs far past its production tolerances so
// that the comparison measures where it converges, not where it stops.
inline std::vector<double> l_update_oracle_rel_errors() {
    std::vector<double> errors;
    for (const LUpdateReference& ref : l_update_references()) {
        const CMat w1 = from_row_major(ref.w1, ref.m, ref.m);
        const CMat w2 = from_row_major(ref.w2, ref.n, ref.n);
        const CMat a = from_row_major(ref.a, ref.m * ref.n, ref.q);
        const CVec s = from_vector(ref.s);
        const CVec u = from_vector(ref.u);
        const CVec y = from_vector(ref.y);
        std::vector<Eigen::Index> indices(ref.mask.begin(), ref.mask.end());
        const lrps::SelectionMask mask =
            lrps::mask_from_indices(static_cast<Eigen::Index>(ref.m) * ref.n, indices);

        lrps::SolverConfig config;
        config.beta_l = ref.beta_l;
        config.l_update_cap = 20000;
        config.l_update_tol = 1e-10;

        lrps::Workspace ws = lrps::make_workspace(y, mask, a, ref.m, ref.n, config);
        lrps::SolverState state = lrps::init_state(ws, config);
        state.l.setZero();
        state.rho = ref.rho;
        state.weights.w1 = w1;
        state.weights.w2 = w2;
        // The workspace equilibrates dictionary columns; express the frozen
        // s there so the data term matches the reference b exactly.
        state.s = s.cwiseProduct(ws.col_norms.cast<cxd>());
        state.u = u;
        lrps::update_l(state, ws, config);

        const CVec b = y - ws.masked_a * state.s - u / ref.rho;
        double quad = 0.0;
        for (Eigen::Index i = 0; i < ws.k(); ++i) {
            const cxd e = state.l(ws.mask_rows[static_cast<std::size_t>(i)],
                                  ws.mask_cols[static_cast<std::size_t>(i)]) -
                          b(i);
            quad += std::norm(e);
        }
        const double lin = std::real((w1.conjugate().cwiseProduct(state.l0)).sum()) +
                           std::real((w2.conjugate().cwiseProduct(state.r)).sum());
        const double objective = 0.5 * ref.beta_l * lin + 0.5 * ref.rho * quad;
        errors.push_back(std::abs(objective - ref.oracle_objective) /
                         std::abs(ref.oracle_objective));
    }
    return errors;
}

// Relative objective error of update_s against coordinate descent on
// randomized small instances.
inline std::vector<double> s_update_oracle_rel_errors(std::uint64_t seed, int count) {
    std::vector<double> errors;
    lrps::Rng rng(seed);
    for (int trial = 0; trial < count; ++trial) {
        const int m = 2, n = 4;  // K = 8
        const int q = 4 + static_cast<int>(rng.below(5));  // Q in [4, 8]
        CMat a(m * n, q);
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            for (Eigen::Index j = 0; j < q; ++j) a(i, j) = rng.circular_normal();
        CVec y(m * n);
        for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = rng.circular_normal();
        CVec w_source(q);
        for (Eigen::Index i = 0; i < q; ++i) w_source(i) = rng.circular_normal();

        lrps::SolverConfig config;
        config.s_update_cap = 50000;
        config.s_update_tol = 1e-15;
        const lrps::SelectionMask mask = lrps::full_mask(m * n);
        lrps::Workspace ws = lrps::make_workspace(y, mask, a, m, n, config);
        lrps::SolverState state = lrps::init_state(ws, config);
        state.l.setZero();
        state.rho = 0.1 * std::pow(100.0, rng.uniform());  // [0.1, 10]
        state.weights.ws = lrps::update_ws(w_source, 1.0);
        const RVec weights = state.weights.ws;
        lrps::update_s(state, ws, config);

        const double lambda = config.effective_beta_s(m, n) / state.rho;
        const CVec reference = cd_weighted_lasso(ws.masked_a, y, weights, lambda, 5000);
        const double f_ours = lasso_objective(ws.masked_a, y, weights, lambda, state.s);
        const double f_ref = lasso_objective(ws.masked_a, y, weights, lambda, reference);
        errors.push_back(std::abs(f_ours - f_ref) / std::abs(f_ref));
    }
    return errors;
}

}  // namespace lrps_test
