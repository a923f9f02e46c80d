// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace lrps {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Stacked vector layout used throughout: entry (m, n) of an M x N matrix
/// maps to linear index k = m*N + n (antenna-major, frequency-minor).
CVec vec(const CMat& x);

/// Inverse of vec(); v must have rows*cols entries.
CMat unvec(const CVec& v, Eigen::Index rows, Eigen::Index cols);

bool is_hermitian(const CMat& x, double tol = 1e-10);

/// (X + X^H) / 2
CMat hermitian_part(const CMat& x);

/// Eigenvalue clamp onto the PSD cone of Hermitian matrices.
CMat psd_project(const CMat& x);

}  // namespace lrps
