// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#include "adascale/normal.hpp"

#include <cmath>
#include <numbers>

namespace adascale {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2*pi)/2
constexpr double kInvSqrt2 = 0.70710678118654752440;    // 1/sqrt(2)

// log of the Mills-ratio series sum_{k>=0} (-1)^k (2k-1)!! / a^(2k),
// truncated where terms stop shrinking (the series is asymptotic).
double log_mills_series(double a) {
  const double inv_a2 = 1.0 / (a * a);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 20; ++k) {
    const double next = term * -(2.0 * k - 1.0) * inv_a2;
    if (std::abs(next) >= std::abs(term)) break;
    sum += next;
    term = next;
    if (std::abs(next) < 1e-17 * std::abs(sum)) break;
  }
  return std::log(sum);
}

}  // namespace

NormalLogs std_normal_logs(double z) {
  NormalLogs out;
  out.log_pdf = -0.5 * z * z - kHalfLog2Pi;
  if (z < -6.0) {
    // Phi(z) = phi(a)/a * (1 - 1/a^2 + 3/a^4 - ...), a = -z.
    const double a = -z;
    out.log_cdf = out.log_pdf - std::log(a) + log_mills_series(a);
  } else if (z <= 0.0) {
    out.log_cdf = std::log(0.5 * std::erfc(-z * kInvSqrt2));
  } else {
    // log(1 - Phi(-z)) via log1p keeps precision when Phi(z) ~ 1.
    out.log_cdf = std::log1p(-0.5 * std::erfc(z * kInvSqrt2));
  }
  return out;
}

}  // namespace adascale
