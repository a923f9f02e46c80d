// SPDX-License-Identifier: Apache-2.0
//
// lrps — compressive low-rank plus sparse demixing for SFCW radar imaging
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace lrps {

/// Deterministic random source keyed by (seed, stream). The engine is
/// mt19937_64 and every distribution is implemented locally, so sequences
/// do not depend on the standard-library vendor. Distinct streams derived
/// from the same seed are statistically independent.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform();

    /// Standard normal (Marsaglia polar method).
    double normal();

    /// Circularly symmetric complex normal with E|z|^2 = 1.
    std::complex<double> circular_normal();

    /// Unit-modulus complex number with uniform phase.
    std::complex<double> random_phase();

    /// Uniform integer in [0, bound); bound must be nonzero.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 gen_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace lrps
