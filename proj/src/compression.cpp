// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "lrps/compression.hpp"

#include "lrps/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lrps {

namespace {
constexpr std::uint64_t kMaskStream = 0x6d61736bULL;
}

void SelectionMask::validate() const {
    if (total_size < 1) throw std::invalid_argument("SelectionMask: total_size must be >= 1");
    if (indices.empty()) throw std::invalid_argument("SelectionMask: needs at least one index");
    Eigen::Index prev = -1;
    for (Eigen::Index idx : indices) {
        if (idx < 0 || idx >= total_size)
            throw std::invalid_argument("SelectionMask: index out of range");
        if (idx <= prev)
            throw std::invalid_argument("SelectionMask: indices must be strictly increasing");
        prev = idx;
    }
}

SelectionMask random_mask(Eigen::Index total_size, double ratio, std::uint64_t seed) {
    if (total_size < 1) throw std::invalid_argument("random_mask: total_size must be >= 1");
    if (!(ratio > 0.0) || ratio > 1.0)
        throw std::invalid_argument("random_mask: ratio must lie in (0, 1]");
    const auto k = static_cast<Eigen::Index>(std::floor(ratio * static_cast<double>(total_size) + 0.5));
    if (k < 1) throw std::invalid_argument("random_mask: ratio selects zero samples");

    Rng rng(seed, kMaskStream);
    std::vector<Eigen::Index> pool(static_cast<std::size_t>(total_size));
    for (Eigen::Index i = 0; i < total_size; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (Eigen::Index i = 0; i < k; ++i) {
        const auto j = i + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(total_size - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(k));
    std::sort(pool.begin(), pool.end());

    SelectionMask mask{total_size, std::move(pool)};
    mask.validate();
    return mask;
}

SelectionMask full_mask(Eigen::Index total_size) {
    SelectionMask mask;
    mask.total_size = total_size;
    mask.indices.resize(static_cast<std::size_t>(total_size));
    for (Eigen::Index i = 0; i < total_size; ++i) mask.indices[static_cast<std::size_t>(i)] = i;
    mask.validate();
    return mask;
}

SelectionMask mask_from_indices(Eigen::Index total_size, std::vector<Eigen::Index> indices) {
    std::sort(indices.begin(), indices.end());
    SelectionMask mask{total_size, std::move(indices)};
    mask.validate();
    return mask;
}

CVec SelectionMask::apply(const CVec& x) const {
    if (x.size() != total_size)
        throw std::invalid_argument("SelectionMask::apply: vector length does not match mask");
    CVec out(k());
    for (Eigen::Index i = 0; i < k(); ++i) out(i) = x(indices[static_cast<std::size_t>(i)]);
    return out;
}

CVec SelectionMask::adjoint(const CVec& y) const {
    if (y.size() != k())
        throw std::invalid_argument("SelectionMask::adjoint: vector length does not match mask");
    CVec out = CVec::Zero(total_size);
    for (Eigen::Index i = 0; i < k(); ++i) out(indices[static_cast<std::size_t>(i)]) = y(i);
    return out;
}

CMat SelectionMask::apply_rows(const CMat& x) const {
    if (x.rows() != total_size)
        throw std::invalid_argument("SelectionMask::apply_rows: row count does not match mask");
    CMat out(k(), x.cols());
    for (Eigen::Index i = 0; i < k(); ++i) out.row(i) = x.row(indices[static_cast<std::size_t>(i)]);
    return out;
}

}  // namespace lrps
