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

#include <cstdint>
#include <vector>

namespace lrps {

/// Row-selection operator: K one-hot rows picking entries of a length-MN
/// vector. Kept as an index list; the dense matrix is never formed outside
/// of tests. For one-hot rows the pseudo-inverse equals the transpose, so
/// adjoint() doubles as both.
struct SelectionMask {
    Eigen::Index total_size = 0;           // MN
    std::vector<Eigen::Index> indices;     // strictly increasing

    Eigen::Index k() const { return static_cast<Eigen::Index>(indices.size()); }
    void validate() const;

    /// output[i] = x[indices[i]]
    CVec apply(const CVec& x) const;

    /// Scatter back: zeros everywhere except output[indices[i]] = y[i].
    CVec adjoint(const CVec& y) const;

    /// Row-selected copy of a matrix (builds the compressed dictionary ΦA).
    CMat apply_rows(const CMat& x) const;
};

/// K = round-half-up(ratio * MN) indices drawn uniformly without
/// replacement; deterministic per seed. ratio must lie in (0, 1] and yield
/// K >= 1.
SelectionMask random_mask(Eigen::Index total_size, double ratio, std::uint64_t seed);

SelectionMask full_mask(Eigen::Index total_size);

SelectionMask mask_from_indices(Eigen::Index total_size, std::vector<Eigen::Index> indices);

}  // namespace lrps
