// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_SOBOL_HPP
#define ADASCALE_SOBOL_HPP

#include <cstdint>

#include <Eigen/Dense>

#include "adascale/errors.hpp"
#include "adascale/linalg.hpp"

namespace adascale {

// Maximum dimension supported by the shipped direction-number table.
int sobol_max_dimension();

// First n points of the d-dimensional Sobol sequence, one point per row,
// all coordinates in [0,1).
//
// Unscrambled mode (scramble == false) is the canonical Gray-code
// construction from the Joe-Kuo direction numbers and starts at the origin;
// the 1-D sequence begins 0, 1/2, 3/4, 1/4, ... The seed is ignored in
// this mode. Scrambled mode applies a seeded per-dimension digital shift
// (XOR of the 32-bit integer coordinates), which preserves the dyadic
// balance properties of the net. Output is a deterministic function of
// (n, d, seed, scramble).
//
// Throws DimensionUnsupported when d exceeds the direction-number table.
Eigen::MatrixXd sobol_sequence(Eigen::Index n, int d, std::uint64_t seed,
                               bool scramble);

// Sobol points mapped affinely into a box (lower + (upper-lower) * u).
Eigen::MatrixXd sobol_in_box(Eigen::Index n, const BoxBounds& box,
                             std::uint64_t seed, bool scramble);

}  // namespace adascale

#endif  // ADASCALE_SOBOL_HPP
