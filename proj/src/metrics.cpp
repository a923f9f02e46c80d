// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lrps/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lrps {

DefectSupport DefectSupport::from_sparse(const CVec& s_t) {
    DefectSupport support;
    support.grid_size = static_cast<int>(s_t.size());
    for (Eigen::Index i = 0; i < s_t.size(); ++i)
        if (s_t(i) != cxd{0.0, 0.0}) support.cells.push_back(static_cast<int>(i));
    return support;
}

void DefectSupport::validate() const {
    if (cells.empty()) throw std::invalid_argument("DefectSupport: empty support");
    if (static_cast<int>(cells.size()) >= grid_size)
        throw std::invalid_argument("DefectSupport: support must be a strict subset of the grid");
    int prev = -1;
    for (int c : cells) {
        if (c < 0 || c >= grid_size)
            throw std::invalid_argument("DefectSupport: cell index out of range");
        if (c <= prev) throw std::invalid_argument("DefectSupport: cells must be sorted and distinct");
        prev = c;
    }
}

double tcr_db(const CVec& s, const DefectSupport& support) {
    support.validate();
    if (s.size() != support.grid_size)
        throw std::invalid_argument("tcr_db: vector length does not match support grid");
    double target = 0.0;
    double clutter = 0.0;
    auto it = support.cells.begin();
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        const double e = std::norm(s(i));
        if (it != support.cells.end() && *it == static_cast<int>(i)) {
            target += e;
            ++it;
        } else {
            clutter += e;
        }
    }
    if (target == 0.0) return -std::numeric_limits<double>::infinity();
    if (clutter == 0.0) return std::numeric_limits<double>::infinity();
    const double n_d = static_cast<double>(support.cells.size());
    const double q = static_cast<double>(support.grid_size);
    return 10.0 * std::log10((q - n_d) / n_d * target / clutter);
}

double capped_tcr_db(double tcr) {
    return std::clamp(tcr, -kTcrCapDb, kTcrCapDb);
}

double nmse_lowrank(const CMat& l_hat, const CMat& l_t) {
    if (l_hat.rows() != l_t.rows() || l_hat.cols() != l_t.cols())
        throw std::invalid_argument("nmse_lowrank: dimension mismatch");
    const double denom = l_t.squaredNorm();
    if (denom == 0.0) throw std::invalid_argument("nmse_lowrank: zero ground truth");
    return (l_hat - l_t).squaredNorm() / denom;
}

double nmse_sparse(const CVec& s_hat, const CVec& s_t) {
    if (s_hat.size() != s_t.size())
        throw std::invalid_argument("nmse_sparse: dimension mismatch");
    const double denom = s_t.squaredNorm();
    if (denom == 0.0) throw std::invalid_argument("nmse_sparse: zero ground truth");
    return (s_hat - s_t).squaredNorm() / denom;
}

double snr_db(const CMat& l, const CVec& defect_vec, const CMat& z) {
    if (defect_vec.size() != l.size())
        throw std::invalid_argument("snr_db: defect vector length does not match L");
    const double noise = z.squaredNorm();
    if (noise == 0.0) throw std::invalid_argument("snr_db: zero noise");
    const double signal = (vec(l) + defect_vec).squaredNorm();
    return 10.0 * std::log10(signal / noise);
}

}  // namespace lrps
