// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "lrps/types.hpp"

#include <vector>

namespace lrps {

/// True defect locations on the grid.
struct DefectSupport {
    std::vector<int> cells;  // sorted, distinct
    int grid_size = 0;

    static DefectSupport from_sparse(const CVec& s_t);
    void validate() const;
};

/// Finite cap used when aggregating or exporting infinite TCR values.
inline constexpr double kTcrCapDb = 300.0;

/// Target-to-clutter ratio in dB:
///   ((Q - N_d) / N_d) * sum_{q in support} |s_q|^2 / sum_{q not in support} |s_q|^2.
/// Returns +inf when the clutter sum is zero and -inf when the target sum is
/// zero (all recovered energy off support).
double tcr_db(const CVec& s, const DefectSupport& support);

/// Clamps the +-inf sentinels to +-300 dB so runs can be averaged.
double capped_tcr_db(double tcr);

/// |L - L_T|_F^2 / |L_T|_F^2
double nmse_lowrank(const CMat& l_hat, const CMat& l_t);

/// |s - s_T|_2^2 / |s_T|_2^2
double nmse_sparse(const CVec& s_hat, const CVec& s_t);

/// 10 log10( |vec(L) + d|^2 / |Z|_F^2 ), d = A s (or vec of the defect response).
double snr_db(const CMat& l, const CVec& defect_vec, const CMat& z);

}  // namespace lrps
