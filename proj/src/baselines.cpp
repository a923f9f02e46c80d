// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lrps/baselines.hpp"

#include <stdexcept>

namespace lrps {

CVec back_projection(const CMat& d_hat, const CMat& a) {
    if (a.rows() != d_hat.size())
        throw std::invalid_argument("back_projection: dictionary rows do not match data size");
    return a.adjoint() * vec(d_hat) / static_cast<double>(d_hat.size());
}

ClutterRemovalOutput spatial_filter(const CMat& y, const CMat& a) {
    if (y.rows() < 2)
        throw std::invalid_argument("spatial_filter: needs at least two antennas");
    ClutterRemovalOutput out;
    out.d_hat = y;
    const Eigen::RowVectorXcd column_mean = y.colwise().mean();
    out.d_hat.rowwise() -= column_mean;
    out.s_img = back_projection(out.d_hat, a);
    return out;
}

ClutterRemovalOutput subspace_projection(const CMat& y, int r, const CMat& a) {
    const auto rank_limit = std::min(y.rows(), y.cols());
    if (r < 1 || r >= rank_limit)
        throw std::invalid_argument("subspace_projection: rank must satisfy 1 <= r < min(M, N)");
    Eigen::JacobiSVD<CMat> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
    ClutterRemovalOutput out;
    out.d_hat = y;
    for (int i = 0; i < r; ++i)
        out.d_hat -= svd.singularValues()(i) * svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
    out.s_img = back_projection(out.d_hat, a);
    return out;
}

}  // namespace lrps
