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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace lrps {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::lrpsr_s: return "lrpsr_s";
        case Variant::lrpsr_m: return "lrpsr_m";
        case Variant::lrsr: return "lrsr";
    }
    return "unknown";
}

Variant variant_from_name(const std::string& name) {
    if (name == "lrpsr_s") return Variant::lrpsr_s;
    if (name == "lrpsr_m") return Variant::lrpsr_m;
    if (name == "lrsr") return Variant::lrsr;
    throw std::invalid_argument("unknown solver variant: " + name);
}

void SolverConfig::validate() const {
    if (beta_l <= 0) throw std::invalid_argument("SolverConfig: beta_l must be positive");
    if (delta <= 0) throw std::invalid_argument("SolverConfig: delta must be positive");
    if (rho0 <= 0 || rho_max <= 0) throw std::invalid_argument("SolverConfig: rho bounds must be positive");
    if (rho_growth <= 1.0) throw std::invalid_argument("SolverConfig: rho_growth must exceed 1");
    if (epsilon <= 0) throw std::invalid_argument("SolverConfig: epsilon must be positive");
    if (max_outer < 1) throw std::invalid_argument("SolverConfig: max_outer must be >= 1");
    if (l_update_tol <= 0 || s_update_tol <= 0)
        throw std::invalid_argument("SolverConfig: inner tolerances must be positive");
    if (l_update_cap < 1 || s_update_cap < 1)
        throw std::invalid_argument("SolverConfig: inner caps must be >= 1");
    if (power_iterations < 1) throw std::invalid_argument("SolverConfig: power_iterations must be >= 1");
}

int SolverConfig::effective_inner_loops(Variant v) const {
    if (inner_loops >= 0) return inner_loops;
    return v == Variant::lrpsr_m ? 5 : 0;
}

bool SolverConfig::effective_reweighting(Variant v) const {
    return v == Variant::lrsr ? false : reweighting;
}

double SolverConfig::effective_beta_s(int m, int n) const {
    return beta_s > 0 ? beta_s : 1.0 / std::sqrt(static_cast<double>(std::max(m, n)));
}

WeightSet WeightSet::identity(int m, int n, int q) {
    return {CMat::Identity(m, m), CMat::Identity(n, n), RVec::Ones(q)};
}

namespace {

// Largest squared singular value via power iteration on B^H B, inflated a
// touch because the Rayleigh quotient approaches the maximum from below.
double operator_norm_sq(const CMat& b, int iterations, double tol) {
    if (b.size() == 0) return 0.0;
    Rng rng(0x9e3779b9ULL, 0x706f7765ULL);
    CVec v(b.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.circular_normal();
    double norm = v.norm();
    if (norm == 0) return 0.0;
    v /= norm;
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
        CVec w = b.adjoint() * (b * v);
        const double next = std::real(v.dot(w));
        const double wn = w.norm();
        if (wn == 0) return 0.0;
        v = w / wn;
        if (it > 0 && std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return lambda * (1.0 + 1e-3);
}

double rho_at(const SolverConfig& cfg, int t) {
    return std::min(cfg.rho0 * std::pow(cfg.rho_growth, t), cfg.rho_max);
}

}  // namespace

Workspace make_workspace(CVec y_cs, SelectionMask mask, const CMat& a, int m, int n,
                         const SolverConfig& config) {
    mask.validate();
    if (mask.total_size != static_cast<Eigen::Index>(m) * n)
        throw std::invalid_argument("make_workspace: mask size does not match M*N");
    if (a.rows() != mask.total_size)
        throw std::invalid_argument("make_workspace: dictionary row count does not match M*N");
    if (y_cs.size() != mask.k())
        throw std::invalid_argument("make_workspace: measurement length does not match mask");
    if (!y_cs.allFinite() || !a.allFinite())
        throw std::invalid_argument("make_workspace: inputs contain non-finite values");

    Workspace ws;
    ws.col_norms.resize(a.cols());
    if (config.equilibrate_columns) {
        for (Eigen::Index q = 0; q < a.cols(); ++q) {
            const double norm = a.col(q).norm();
            ws.col_norms(q) = norm > 0 ? norm : 1.0;
        }
    } else {
        ws.col_norms.setOnes();
    }
    ws.masked_a = mask.apply_rows(a) * ws.col_norms.cwiseInverse().asDiagonal();
    ws.masked_a_norm_sq = operator_norm_sq(ws.masked_a, config.power_iterations, config.power_tol);
    ws.m = m;
    ws.n = n;
    ws.mask_rows.reserve(static_cast<std::size_t>(mask.k()));
    ws.mask_cols.reserve(static_cast<std::size_t>(mask.k()));
    for (Eigen::Index idx : mask.indices) {
        ws.mask_rows.push_back(static_cast<int>(idx / n));
        ws.mask_cols.push_back(static_cast<int>(idx % n));
    }
    ws.y = std::move(y_cs);
    ws.mask = std::move(mask);
    return ws;
}

cxd weighted_soft_threshold(cxd v, double w, double tau) {
    const double mag = std::abs(v);
    if (mag == 0.0) return {0.0, 0.0};
    const double kept = mag - tau * w;
    if (kept <= 0.0) return {0.0, 0.0};
    return v * (kept / mag);
}

std::pair<CMat, CMat> update_weights_lr(const CMat& l0, const CMat& r, double delta) {
    if (delta <= 0) throw std::invalid_argument("update_weights_lr: delta must be positive");
    auto reweight = [delta](const CMat& x) {
        Eigen::SelfAdjointEigenSolver<CMat> eig(hermitian_part(x));
        RVec lam = eig.eigenvalues().cwiseMax(0.0);
        RVec gamma = (lam.array() + delta).inverse();
        return CMat(eig.eigenvectors() * gamma.asDiagonal() * eig.eigenvectors().adjoint());
    };
    return {reweight(l0), reweight(r)};
}

RVec update_ws(const CVec& s, double delta) {
    if (delta <= 0) throw std::invalid_argument("update_ws: delta must be positive");
    return (s.cwiseAbs().array() + delta).inverse();
}

double residual_sq(const CMat& l, const CVec& s, const Workspace& ws) {
    CVec fit = ws.masked_a * s - ws.y;
    for (Eigen::Index i = 0; i < ws.k(); ++i)
        fit(i) += l(ws.mask_rows[static_cast<std::size_t>(i)], ws.mask_cols[static_cast<std::size_t>(i)]);
    return fit.squaredNorm();
}

// Convenience form in caller coordinates (no column equilibration).
double residual_sq(const CMat& l, const CVec& s, const CVec& y_cs, const SelectionMask& mask,
                   const CMat& a) {
    mask.validate();
    if (a.rows() != mask.total_size || s.size() != a.cols() || y_cs.size() != mask.k() ||
        l.size() != mask.total_size)
        throw std::invalid_argument("residual_sq: inconsistent dimensions");
    CVec fit = mask.apply_rows(a) * s - y_cs;
    const auto cols = l.cols();
    for (Eigen::Index i = 0; i < mask.k(); ++i) {
        const Eigen::Index idx = mask.indices[static_cast<std::size_t>(i)];
        fit(i) += l(idx / cols, idx % cols);
    }
    return fit.squaredNorm();
}

InnerReport update_l(SolverState& state, const Workspace& ws, const SolverConfig& config) {
    const int m = ws.m;
    const int n = ws.n;
    const int dim = m + n;
    const double rho = state.rho;
    const double half_beta = 0.5 * config.beta_l;
    const double eta = 2.0 / rho;

    // Fixed per call: target entries of the data term.
    const CVec b = ws.y - ws.masked_a * state.s - state.u / rho;

    const CMat& w1 = state.weights.w1;
    const CMat& w2 = state.weights.w2;

    auto fval = [&](const CMat& x) {
        double lin = std::real((w1.conjugate().cwiseProduct(x.topLeftCorner(m, m))).sum()) +
                     std::real((w2.conjugate().cwiseProduct(x.bottomRightCorner(n, n))).sum());
        double quad = 0.0;
        for (Eigen::Index i = 0; i < ws.k(); ++i) {
            const cxd e = x(ws.mask_rows[static_cast<std::size_t>(i)],
                            m + ws.mask_cols[static_cast<std::size_t>(i)]) -
                          b(i);
            quad += std::norm(e);
        }
        return half_beta * lin + 0.5 * rho * quad;
    };

    auto gradient = [&](const CMat& x) {
        CMat g = CMat::Zero(dim, dim);
        g.topLeftCorner(m, m) = half_beta * w1;
        g.bottomRightCorner(n, n) = half_beta * w2;
        for (Eigen::Index i = 0; i < ws.k(); ++i) {
            const int row = ws.mask_rows[static_cast<std::size_t>(i)];
            const int col = m + ws.mask_cols[static_cast<std::size_t>(i)];
            const cxd e = 0.5 * rho * (x(row, col) - b(i));
            g(row, col) += e;
            g(col, row) += std::conj(e);
        }
        return g;
    };

    // Warm start from the previous blocks, re-projected onto the cone.
    CMat xb(dim, dim);
    xb.topLeftCorner(m, m) = state.l0;
    xb.topRightCorner(m, n) = state.l;
    xb.bottomLeftCorner(n, m) = state.l.adjoint();
    xb.bottomRightCorner(n, n) = state.r;
    CMat x = psd_project(xb);

    CMat yk = x;
    double fx = fval(x);
    double tk = 1.0;

    InnerReport report;
    report.converged = false;
    for (int it = 1; it <= config.l_update_cap; ++it) {
        report.iterations = it;
        const CMat z = psd_project(yk - eta * gradient(yk));
        const double fz = fval(z);
        const double step = (yk - z).norm();

        const double tk1 = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
        CMat x_new;
        double fx_new;
        if (fz <= fx) {
            x_new = z;
            fx_new = fz;
        } else {
            x_new = x;
            fx_new = fx;
        }
        // x still holds the previous accepted iterate here.
        yk = x_new + (tk / tk1) * (z - x_new) + ((tk - 1.0) / tk1) * (x_new - x);
        x = std::move(x_new);
        fx = fx_new;
        tk = tk1;

        // Gradient-mapping magnitude relative to the iterate scale.
        if (step <= config.l_update_tol * eta * (1.0 + z.norm())) {
            report.converged = true;
            break;
        }
    }

    state.l0 = hermitian_part(x.topLeftCorner(m, m));
    state.r = hermitian_part(x.bottomRightCorner(n, n));
    state.l = x.topRightCorner(m, n);
    return report;
}

InnerReport update_s(SolverState& state, const Workspace& ws, const SolverConfig& config) {
    const double rho = state.rho;
    const double lambda = config.effective_beta_s(ws.m, ws.n) / rho;
    const RVec& w = state.weights.ws;
    const CMat& bmat = ws.masked_a;

    CVec target = ws.y - state.u / rho;
    for (Eigen::Index i = 0; i < ws.k(); ++i)
        target(i) -= state.l(ws.mask_rows[static_cast<std::size_t>(i)],
                             ws.mask_cols[static_cast<std::size_t>(i)]);

    const double step = ws.masked_a_norm_sq > 0 ? 1.0 / ws.masked_a_norm_sq : 1.0;

    auto fval = [&](const CVec& s, const CVec& bs) {
        double l1 = 0.0;
        for (Eigen::Index i = 0; i < s.size(); ++i) l1 += w(i) * std::abs(s(i));
        return 0.5 * (bs - target).squaredNorm() + lambda * l1;
    };

    CVec x = state.s;
    CVec bx = bmat * x;
    double fx = fval(x, bx);
    CVec yk = x;
    CVec byk = bx;
    double tk = 1.0;

    InnerReport report;
    report.converged = false;
    for (int it = 1; it <= config.s_update_cap; ++it) {
        report.iterations = it;
        const CVec grad = bmat.adjoint() * (byk - target);
        CVec z = yk - step * grad;
        for (Eigen::Index i = 0; i < z.size(); ++i)
            z(i) = weighted_soft_threshold(z(i), w(i), lambda * step);
        const CVec bz = bmat * z;
        const double fz = fval(z, bz);

        const double tk1 = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
        const bool accepted = fz <= fx;
        CVec x_new = accepted ? z : x;
        CVec bx_new = accepted ? bz : bx;
        const double fx_new = accepted ? fz : fx;
        const double change = std::abs(fx - fx_new);
        // x still holds the previous accepted iterate here.
        yk = x_new + (tk / tk1) * (z - x_new) + ((tk - 1.0) / tk1) * (x_new - x);
        byk = bmat * yk;
        x = std::move(x_new);
        bx = std::move(bx_new);
        fx = fx_new;
        tk = tk1;

        if (it > 1 && accepted && change <= config.s_update_tol * std::max(1.0, std::abs(fx))) {
            report.converged = true;
            break;
        }
    }
    state.s = std::move(x);
    return report;
}

void update_u(SolverState& state, const Workspace& ws) {
    CVec fit = ws.masked_a * state.s - ws.y;
    for (Eigen::Index i = 0; i < ws.k(); ++i)
        fit(i) += state.l(ws.mask_rows[static_cast<std::size_t>(i)],
                          ws.mask_cols[static_cast<std::size_t>(i)]);
    state.u += state.rho * fit;
}

SolverState init_state(const Workspace& ws, const SolverConfig& config) {
    SolverState st;
    st.l = unvec(ws.mask.adjoint(ws.y), ws.m, ws.n);
    st.l0 = CMat::Zero(ws.m, ws.m);
    st.r = CMat::Zero(ws.n, ws.n);
    st.s = CVec::Zero(ws.q());
    st.u = CVec::Zero(ws.k());
    st.weights = WeightSet::identity(ws.m, ws.n, static_cast<int>(ws.q()));
    st.rho = config.rho0;
    st.t = 0;
    return st;
}

RecoveryResult solve(const CVec& y_cs, const SelectionMask& mask, const CMat& a, int m, int n,
                     Variant variant, const SolverConfig& config, const GroundTruth* ground_truth) {
    config.validate();
    Workspace ws = make_workspace(y_cs, mask, a, m, n, config);
    if (ground_truth) {
        if (ground_truth->l_t.rows() != m || ground_truth->l_t.cols() != n ||
            ground_truth->s_t.size() != ws.q())
            throw std::invalid_argument("solve: ground truth dimensions do not match");
    }

    RecoveryResult result;
    if (ws.y.norm() == 0.0) {
        result.l = CMat::Zero(m, n);
        result.s = CVec::Zero(ws.q());
        result.final_rho = config.rho0;
        return result;
    }
    const CVec rescale = ws.col_norms.cwiseInverse().cast<cxd>();

    SolverState state = init_state(ws, config);
    const int passes = config.effective_inner_loops(variant) + 1;
    const bool reweight = config.effective_reweighting(variant);
    if (reweight && config.data_driven_init_weights) {
        Eigen::JacobiSVD<CMat> svd(state.l, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const RVec& sv = svd.singularValues();
        const CMat l0_polar = svd.matrixU() * sv.asDiagonal() * svd.matrixU().adjoint();
        const CMat r_polar = svd.matrixV() * sv.asDiagonal() * svd.matrixV().adjoint();
        auto [w1, w2] = update_weights_lr(l0_polar, r_polar, config.delta);
        state.weights.w1 = std::move(w1);
        state.weights.w2 = std::move(w2);
    }

    double res = residual_sq(state.l, state.s, ws);
    do {
        const double rho_used = state.rho;

        for (int j = 0; j < passes; ++j) {
            const InnerReport rep = update_l(state, ws, config);
            result.l_update_converged = result.l_update_converged && rep.converged;
            if (reweight) {
                auto [w1, w2] = update_weights_lr(state.l0, state.r, config.delta);
                state.weights.w1 = std::move(w1);
                state.weights.w2 = std::move(w2);
            }
        }
        for (int j = 0; j < passes; ++j) {
            const InnerReport rep = update_s(state, ws, config);
            result.s_update_converged = result.s_update_converged && rep.converged;
            if (reweight) state.weights.ws = update_ws(state.s, config.delta);
        }
        update_u(state, ws);

        state.t += 1;
        state.rho = rho_at(config, state.t);

        res = residual_sq(state.l, state.s, ws);
        result.residual_history.push_back(res);
        result.rho_history.push_back(rho_used);
        if (ground_truth) {
            result.nmse_l_history.push_back(nmse_lowrank(state.l, ground_truth->l_t));
            result.nmse_s_history.push_back(
                nmse_sparse(state.s.cwiseProduct(rescale), ground_truth->s_t));
        }
        if (!std::isfinite(res) || !state.l.allFinite() || !state.s.allFinite() ||
            !state.u.allFinite())
            throw std::runtime_error("solve: non-finite iterate at outer iteration " +
                                     std::to_string(state.t));
        // Post-test loop: at least one pass runs even when the initial
        // iterate already fits the data.
    } while (res > config.epsilon && state.t < config.max_outer);

    result.l = state.l;
    result.s = state.s.cwiseProduct(rescale);
    result.iterations = state.t;
    result.final_rho = state.rho;
    return result;
}

}  // namespace lrps
