// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lrps/types.hpp"

#include <stdexcept>

namespace lrps {

CVec vec(const CMat& x) {
    const Eigen::Index rows = x.rows();
    const Eigen::Index cols = x.cols();
    CVec v(rows * cols);
    for (Eigen::Index m = 0; m < rows; ++m)
        for (Eigen::Index n = 0; n < cols; ++n)
            v(m * cols + n) = x(m, n);
    return v;
}

CMat unvec(const CVec& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols)
        throw std::invalid_argument("unvec: vector length does not match rows*cols");
    CMat x(rows, cols);
    for (Eigen::Index m = 0; m < rows; ++m)
        for (Eigen::Index n = 0; n < cols; ++n)
            x(m, n) = v(m * cols + n);
    return x;
}

bool is_hermitian(const CMat& x, double tol) {
    if (x.rows() != x.cols()) return false;
    const double scale = std::max(1.0, x.norm());
    return (x - x.adjoint()).norm() <= tol * scale;
}

CMat hermitian_part(const CMat& x) {
    return 0.5 * (x + x.adjoint());
}

CMat psd_project(const CMat& x) {
    Eigen::SelfAdjointEigenSolver<CMat> eig(hermitian_part(x));
    RVec lam = eig.eigenvalues().cwiseMax(0.0);
    return eig.eigenvectors() * lam.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace lrps
