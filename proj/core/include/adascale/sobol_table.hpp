// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_SOBOL_TABLE_HPP
#define ADASCALE_SOBOL_TABLE_HPP

#include <cstdint>

namespace adascale::detail {

// Joe & Kuo (2008) "new-joe-kuo-6" primitive polynomials and initial
// direction numbers, covering sequence dimensions 1..kSobolTableDims.
// kSobolPoly[j] encodes the full primitive polynomial for dimension j+1
// (dimension 1 is special-cased and ignores its entry); kSobolVinit[j][k]
// holds the initial m-values, of which degree(poly) entries are meaningful.
inline constexpr int kSobolTableDims = 1024;
inline constexpr int kSobolMaxDegree = 13;

extern const std::uint32_t kSobolPoly[kSobolTableDims];
extern const std::uint32_t kSobolVinit[kSobolTableDims][kSobolMaxDegree];

}  // namespace adascale::detail

#endif  // ADASCALE_SOBOL_TABLE_HPP
