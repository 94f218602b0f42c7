// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adascale/normal.hpp"

using adascale::std_normal_logs;

TEST_CASE("symmetry point z = 0") {
  const auto logs = std_normal_logs(0.0);
  CHECK(logs.log_pdf == doctest::Approx(-0.9189385332).epsilon(1e-12));
  CHECK(logs.log_cdf == doctest::Approx(-0.6931471806).epsilon(1e-12));
}

TEST_CASE("deep left tail via the asymptotic branch") {
  // Reference: high-precision evaluation of log Phi(-10).
  CHECK(std_normal_logs(-10.0).log_cdf ==
        doctest::Approx(-53.2312851505).epsilon(1e-10));
  // Stays finite far past where erfc underflows.
  CHECK(std_normal_logs(-37.0).log_cdf ==
        doctest::Approx(-689.0305855774).epsilon(1e-9));
  CHECK(std::isfinite(std_normal_logs(-40.0).log_cdf));
}

TEST_CASE("right tail via log1p") {
  // Phi(5) = 1 - 2.86651571879e-7.
  CHECK(std_normal_logs(5.0).log_cdf ==
        doctest::Approx(-2.86651612964e-7).epsilon(1e-9));
}

TEST_CASE("cdf halves sum to one across the working range") {
  for (double z = -6.0; z <= 6.0; z += 0.0625) {
    const double sum = std::exp(std_normal_logs(z).log_cdf) +
                       std::exp(std_normal_logs(-z).log_cdf);
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("log pdf is the explicit quadratic") {
  for (double z : {-8.0, -1.5, 0.3, 12.0}) {
    CHECK(std_normal_logs(z).log_pdf ==
          doctest::Approx(-0.5 * z * z - 0.9189385332046727).epsilon(1e-14));
  }
}

TEST_CASE("branch boundary is continuous to series accuracy") {
  const double below = std_normal_logs(-6.0 - 1e-9).log_cdf;
  const double above = std_normal_logs(-6.0 + 1e-9).log_cdf;
  CHECK(std::abs(below - above) < 1e-6);
}
