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

namespace lrps {

/// Output of a full-data clutter-reduction baseline: the clutter-suppressed
/// measurement matrix and its matched-filter grid image.
struct ClutterRemovalOutput {
    CMat d_hat;  // M x N
    CVec s_img;  // Q
};

/// Matched-filter image s_img = A^H vec(D_hat) / (MN).
CVec back_projection(const CMat& d_hat, const CMat& a);

/// Removes the across-antenna mean of every frequency column. Requires at
/// least two antennas.
ClutterRemovalOutput spatial_filter(const CMat& y, const CMat& a);

/// Drops the top-r singular components of Y; 1 <= r < min(M, N).
ClutterRemovalOutput subspace_projection(const CMat& y, int r, const CMat& a);

}  // namespace lrps
