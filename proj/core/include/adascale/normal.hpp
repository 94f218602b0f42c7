// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_NORMAL_HPP
#define ADASCALE_NORMAL_HPP

namespace adascale {

struct NormalLogs {
  double log_pdf;
  double log_cdf;
};

// log phi(z) and log Phi(z) of the standard normal, computed so that the
// log-CDF stays finite deep into the left tail: for z < -6 a Mills-ratio
// asymptotic expansion replaces the erfc-based branch, which would
// underflow to -inf near z = -37.
NormalLogs std_normal_logs(double z);

}  // namespace adascale

#endif  // ADASCALE_NORMAL_HPP
