// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "lrps/compression.hpp"
#include "lrps/types.hpp"

#include <string>
#include <vector>

namespace lrps {

/// Solver variants: double-reweighted ADMM with a single inner pass
/// (lrpsr_s), with multiple inner passes (lrpsr_m), and the unweighted
/// nuclear-norm + l1 baseline (lrsr).
enum class Variant { lrpsr_s, lrpsr_m, lrsr };

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct SolverConfig {
    double beta_l = 1.0;
    double beta_s = 0.0;   // <= 0: use 1/sqrt(max(M, N))
    double delta = 1.0;
    double rho0 = 1e-2;
    double rho_growth = 1.05;
    double rho_max = 1e3;
    double epsilon = 1e-8;   // bound on the squared data residual
    int max_outer = 200;     // T
    int inner_loops = -1;    // J; < 0 selects the variant default (0 or 5)
    bool reweighting = true; // forced off for the lrsr variant
    // Rescale dictionary columns to unit norm inside the solver (results are
    // reported in caller coordinates either way).
    bool equilibrate_columns = true;
    // Derive the t = 0 low-rank weights from the spectrum of the initial
    // iterate unvec(adjoint(y)) instead of starting from identity; the
    // identity start leaves the first passes blind to the measured
    // clutter subspace.
    bool data_driven_init_weights = false;

    // Sub-problem controls. The low-rank step stops on its gradient-mapping
    // norm; the sparse step stops on relative objective change.
    double l_update_tol = 1e-6;
    int l_update_cap = 200;
    double s_update_tol = 1e-8;
    int s_update_cap = 500;
    int power_iterations = 50;
    double power_tol = 1e-8;

    void validate() const;
    int effective_inner_loops(Variant v) const;
    bool effective_reweighting(Variant v) const;
    double effective_beta_s(int m, int n) const;
};

/// Reweighting state: Hermitian PSD factors of the nuclear-norm surrogate
/// and the positive diagonal of the l1 surrogate.
struct WeightSet {
    CMat w1;  // M x M
    CMat w2;  // N x N
    RVec ws;  // Q

    static WeightSet identity(int m, int n, int q);
};

struct SolverState {
    CMat l;       // M x N iterate
    CMat l0, r;   // Hermitian auxiliaries coupling to l through the PSD block
    CVec s;       // Q
    CVec u;       // K dual
    WeightSet weights;
    double rho = 0.0;
    int t = 0;
};

struct GroundTruth {
    CMat l_t;
    CVec s_t;
};

struct RecoveryResult {
    CMat l;
    CVec s;
    int iterations = 0;
    std::vector<double> residual_history;  // squared residual after each outer iteration
    std::vector<double> rho_history;       // rho used in each outer iteration
    std::vector<double> nmse_l_history;    // filled when ground truth is supplied
    std::vector<double> nmse_s_history;
    double final_rho = 0.0;
    bool l_update_converged = true;  // false if any inner solve hit its cap
    bool s_update_converged = true;
};

/// Immutable per-solve data: compressed measurements, selection, compressed
/// dictionary and the step size of the sparse update.
///
/// The dictionary is column-equilibrated on construction: iterates live in
/// coordinates where every column has unit norm, which keeps the
/// 1/sqrt(max(M,N)) calibration of the l1 weight meaningful regardless of
/// the raw column scale. col_norms maps back to caller coordinates
/// (s_caller = s_workspace / col_norms).
struct Workspace {
    CVec y;
    SelectionMask mask;
    CMat masked_a;                    // Φ A diag(1/col_norms), K x Q
    RVec col_norms;                   // norms of the full dictionary columns
    double masked_a_norm_sq = 0.0;    // sigma_max(masked_a)^2 (slightly inflated)
    int m = 0, n = 0;
    std::vector<int> mask_rows, mask_cols;  // (m, n) per selected entry

    Eigen::Index q() const { return masked_a.cols(); }
    Eigen::Index k() const { return y.size(); }
};

Workspace make_workspace(CVec y_cs, SelectionMask mask, const CMat& a, int m, int n,
                         const SolverConfig& config);

/// prox of tau * w * |.|: (v/|v|) max(|v| - tau w, 0), and 0 at v = 0.
cxd weighted_soft_threshold(cxd v, double w, double tau);

/// Log-determinant decay applied in the eigenbases of l0 and r:
/// eigenvalues are clamped to >= 0 and mapped to 1/(lambda + delta).
std::pair<CMat, CMat> update_weights_lr(const CMat& l0, const CMat& r, double delta);

/// Diagonal entries 1/(|s_i| + delta).
RVec update_ws(const CVec& s, double delta);

/// Squared data mismatch |Φ vec(L) + ΦA s - y_cs|^2.
double residual_sq(const CMat& l, const CVec& s, const Workspace& ws);
double residual_sq(const CMat& l, const CVec& s, const CVec& y_cs, const SelectionMask& mask,
                   const CMat& a);

struct InnerReport {
    bool converged = true;
    int iterations = 0;
};

/// Low-rank step: minimizes
///   (beta_l/2)(Tr(W1 L0) + Tr(W2 R)) + (rho/2) |Φ vec(L) + ΦA s - y + u/rho|^2
/// over the PSD cone of [[L0, L],[L^H, R]], updating l, l0, r in place.
/// Solved by monotone accelerated projected gradient: an exact-step
/// quadratic descent alternated with Hermitian eigenvalue clamping.
InnerReport update_l(SolverState& state, const Workspace& ws, const SolverConfig& config);

/// Sparse step: weighted-lasso minimization of
///   beta_s |Ws s|_1 + (rho/2) |Φ vec(L) + ΦA s - y + u/rho|^2
/// by monotone accelerated proximal gradient with step 1/sigma_max^2(ΦA).
InnerReport update_s(SolverState& state, const Workspace& ws, const SolverConfig& config);

/// Dual ascent u += rho (Φ vec(L) + ΦA s - y).
void update_u(SolverState& state, const Workspace& ws);

SolverState init_state(const Workspace& ws, const SolverConfig& config);

RecoveryResult solve(const CVec& y_cs, const SelectionMask& mask, const CMat& a, int m, int n,
                     Variant variant, const SolverConfig& config,
                     const GroundTruth* ground_truth = nullptr);

}  // namespace lrps
