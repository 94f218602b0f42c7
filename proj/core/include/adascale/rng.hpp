// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_RNG_HPP
#define ADASCALE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace adascale {

// Deterministic random-variate helpers on top of std::mt19937_64.
//
// The standard distribution classes (std::normal_distribution etc.) are
// implementation-defined, so results would differ across standard libraries.
// These helpers fix the exact transform, which keeps every seeded run
// bit-reproducible anywhere the engine itself is (the engine is fully
// specified by the standard).

// Stateless mix of a base seed and a stream index into a fresh 64-bit seed
// (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform draw in the open interval (0, 1); 53-bit resolution.
inline double uniform01(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal via Box-Muller; consumes exactly two engine draws.
inline double standard_normal(std::mt19937_64& gen) {
  const double u1 = uniform01(gen);
  const double u2 = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

// Chi-squared with integer degrees of freedom, as a sum of squared normals.
inline double chi_squared(std::mt19937_64& gen, int dof) {
  double s = 0.0;
  for (int i = 0; i < dof; ++i) {
    const double z = standard_normal(gen);
    s += z * z;
  }
  return s;
}

}  // namespace adascale

#endif  // ADASCALE_RNG_HPP
