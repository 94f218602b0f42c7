// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#include "adascale/sobol.hpp"

#include <bit>
#include <random>
#include <sstream>
#include <vector>

#include "adascale/sobol_table.hpp"

namespace adascale {
namespace {

constexpr int kBits = 32;

// Direction numbers for one dimension, pre-shifted so that v[k] already
// carries the 2^(31-k) scaling of the k-th m-value.
void direction_numbers(int dim_index, std::uint32_t v[kBits]) {
  if (dim_index == 0) {
    for (int k = 0; k < kBits; ++k) {
      v[k] = 1u << (kBits - 1 - k);
    }
    return;
  }
  const std::uint32_t poly = detail::kSobolPoly[dim_index];
  const int degree = std::bit_width(poly) - 1;
  std::uint32_t m[kBits];
  for (int i = 0; i < degree; ++i) {
    m[i] = detail::kSobolVinit[dim_index][i];
  }
  // Bratley-Fox recurrence: m_i = m_{i-s} xor 2^s m_{i-s} xor the interior
  // polynomial terms 2^k a_k m_{i-k}.
  for (int i = degree; i < kBits; ++i) {
    std::uint32_t next = m[i - degree] ^ (m[i - degree] << degree);
    for (int k = 1; k < degree; ++k) {
      if ((poly >> (degree - k)) & 1u) {
        next ^= m[i - k] << k;
      }
    }
    m[i] = next;
  }
  for (int k = 0; k < kBits; ++k) {
    v[k] = m[k] << (kBits - 1 - k);
  }
}

}  // namespace

int sobol_max_dimension() { return detail::kSobolTableDims; }

Eigen::MatrixXd sobol_sequence(Eigen::Index n, int d, std::uint64_t seed,
                               bool scramble) {
  if (d < 1) {
    throw DimensionUnsupported("sobol_sequence: dimension must be >= 1");
  }
  if (d > detail::kSobolTableDims) {
    std::ostringstream msg;
    msg << "sobol_sequence: dimension " << d
        << " exceeds the direction-number table ("
        << detail::kSobolTableDims << ")";
    throw DimensionUnsupported(msg.str());
  }
  if (n < 0) {
    throw Error("sobol_sequence: n must be nonnegative");
  }

  std::vector<std::uint32_t> v(static_cast<std::size_t>(d) * kBits);
  for (int j = 0; j < d; ++j) {
    direction_numbers(j, v.data() + static_cast<std::size_t>(j) * kBits);
  }

  std::vector<std::uint32_t> shift(d, 0u);
  if (scramble) {
    std::mt19937_64 gen(seed);
    for (int j = 0; j < d; ++j) {
      shift[j] = static_cast<std::uint32_t>(gen() >> 32);
    }
  }

  Eigen::MatrixXd points(n, d);
  std::vector<std::uint32_t> state(d, 0u);
  constexpr double kScale = 0x1.0p-32;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      points(i, j) = (state[j] ^ shift[j]) * kScale;
    }
    // Gray-code step: flip along the lowest zero bit of i.
    const int c = std::countr_one(static_cast<std::uint64_t>(i));
    if (c < kBits) {
      for (int j = 0; j < d; ++j) {
        state[j] ^= v[static_cast<std::size_t>(j) * kBits + c];
      }
    }
  }
  return points;
}

Eigen::MatrixXd sobol_in_box(Eigen::Index n, const BoxBounds& box,
                             std::uint64_t seed, bool scramble) {
  Eigen::MatrixXd u =
      sobol_sequence(n, static_cast<int>(box.dim()), seed, scramble);
  const Eigen::RowVectorXd lo = box.lower.transpose();
  const Eigen::RowVectorXd width = (box.upper - box.lower).transpose();
  return (u.array().rowwise() * width.array()).rowwise() + lo.array();
}

}  // namespace adascale
