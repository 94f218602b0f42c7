// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "adascale/kernel.hpp"
#include "adascale/mig.hpp"
#include "adascale/rng.hpp"
#include "adascale/sobol.hpp"

using adascale::expected_distance_bounds;
using adascale::independent_ig;
using adascale::information_gain;
using adascale::mc_expected_distance;
using adascale::MigCurve;
using adascale::sobol_mig_curve;
using adascale::verify_scaling_invariance;

TEST_CASE("information gain closed forms") {
  CHECK(information_gain(Eigen::MatrixXd::Identity(3, 3), 1.0) ==
        doctest::Approx(1.0397207708).epsilon(1e-12));

  Eigen::MatrixXd ones(2, 2);
  ones << 1.0, 1.0, 1.0, 1.0;  // eigenvalues 2 and 0
  CHECK(information_gain(ones, 1.0) ==
        doctest::Approx(0.5493061443).epsilon(1e-9));

  CHECK(information_gain(Eigen::MatrixXd::Constant(1, 1, 1.0), 0.25) ==
        doctest::Approx(0.8047189562).epsilon(1e-12));
}

TEST_CASE("independent-regime values") {
  CHECK(independent_ig(0, 0.5) == 0.0);
  CHECK(independent_ig(10, 1.0) == doctest::Approx(3.4657359028).epsilon(1e-12));
  CHECK(independent_ig(100, 0.01) == doctest::Approx(230.7560258).epsilon(1e-9));
}

TEST_CASE("information gain never exceeds the independent bound") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 40);
    const int d = 1 + static_cast<int>(gen() % 10);
    Eigen::MatrixXd x(n, d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) x(i, j) = adascale::uniform01(gen);
    const Eigen::MatrixXd k =
        adascale::gram(x, adascale::KernelParams::isotropic(d, 0.4));
    const double noise = 0.01 + adascale::uniform01(gen);
    CHECK(information_gain(k, noise) <= independent_ig(n, noise) + 1e-9);
  }
}

TEST_CASE("information gain grows when a design point is added") {
  std::mt19937_64 gen(7);
  const int d = 4;
  Eigen::MatrixXd x(30, d);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = adascale::uniform01(gen);
  const Eigen::MatrixXd k =
      adascale::gram(x, adascale::KernelParams::isotropic(d, 0.5));
  double prev = 0.0;
  for (int n = 1; n <= 30; ++n) {
    const double ig = information_gain(k.topLeftCorner(n, n), 0.1);
    CHECK(ig >= prev - 1e-10);
    prev = ig;
  }
}

TEST_CASE("tiny trust region collapses the design to rank one") {
  const int n = 50;
  const MigCurve curve = sobol_mig_curve(20, 1e-6, 0.5, 0.01, {n});
  const double expected = 0.5 * std::log1p(n / 0.01);
  CHECK(curve.points[0].second ==
        doctest::Approx(expected).epsilon(1e-3));
}

TEST_CASE("curve invariants: nonnegative, nondecreasing, bounded") {
  std::vector<int> grid;
  for (int n = 1; n <= 60; ++n) grid.push_back(n);
  const MigCurve curve = sobol_mig_curve(40, 0.4, 0.5, 0.01, grid);
  double prev = 0.0;
  for (const auto& [n, ig] : curve.points) {
    CHECK(ig >= 0.0);
    CHECK(ig >= prev - 1e-10);
    CHECK(ig <= independent_ig(n, 0.01) + 1e-9);
    prev = ig;
  }
}

TEST_CASE("larger trust regions extract at least as much information") {
  std::vector<int> grid;
  for (int n = 1; n <= 100; ++n) grid.push_back(n);
  const int d = 100;
  const MigCurve c08 = sobol_mig_curve(d, 0.8, 0.5, 0.01, grid);
  const MigCurve c04 = sobol_mig_curve(d, 0.4, 0.5, 0.01, grid);
  const MigCurve c02 = sobol_mig_curve(d, 0.2, 0.5, 0.01, grid);
  const MigCurve c01 = sobol_mig_curve(d, 0.1, 0.5, 0.01, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(c08.points[i].second >= c04.points[i].second - 1e-9);
    CHECK(c04.points[i].second >= c02.points[i].second - 1e-9);
    CHECK(c02.points[i].second >= c01.points[i].second - 1e-9);
  }
  // L = 0.8 at high D sits within 10% of the independent line.
  const double ratio = c08.points[99].second / independent_ig(100, 0.01);
  CHECK(ratio >= 0.9);
}

TEST_CASE("expected-distance bounds match closed-form references") {
  const auto b1 = expected_distance_bounds(1, 1.0);
  CHECK(b1.lower == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(b1.upper == doctest::Approx(0.3547229816).epsilon(1e-9));

  const auto b2 = expected_distance_bounds(100, 0.5);
  CHECK(b2.lower == doctest::Approx(1.6666666667).epsilon(1e-10));
  CHECK(b2.upper == doctest::Approx(2.0391960994).epsilon(1e-9));
}

TEST_CASE("upper bound approaches (L/sqrt(6)) sqrt(D) in high dimension") {
  for (int d : {20, 100, 1000, 100000}) {
    const auto bounds = expected_distance_bounds(d, 0.7);
    const double simple = 0.7 / std::sqrt(6.0) * std::sqrt(static_cast<double>(d));
    CHECK(bounds.upper / simple <= 1.0);
    CHECK(bounds.upper / simple >= 1.0 - 0.2 / d);
  }
}

TEST_CASE("Monte-Carlo distance on the unit interval") {
  const auto est = mc_expected_distance(1, 1.0, 1000000, 5);
  CHECK(std::abs(est.estimate - 1.0 / 3.0) < 3.0 * est.std_error);
  CHECK(est.std_error < 3e-4);
}

TEST_CASE("Monte-Carlo distance scales homogeneously in L") {
  const auto unit = mc_expected_distance(7, 1.0, 20000, 11);
  const auto scaled = mc_expected_distance(7, 0.3, 20000, 11);
  CHECK(scaled.estimate / 0.3 ==
        doctest::Approx(unit.estimate).epsilon(1e-12));
}

TEST_CASE("Monte-Carlo distance falls inside the closed-form bounds") {
  const auto bounds = expected_distance_bounds(100, 0.5);
  const auto est = mc_expected_distance(100, 0.5, 100000, 13);
  CHECK(est.estimate > bounds.lower - 3.0 * est.std_error);
  CHECK(est.estimate < bounds.upper + 3.0 * est.std_error);
}

TEST_CASE("scaling invariance holds to near machine precision") {
  for (int d : {10, 100}) {
    for (double side : {0.1, 0.3, 0.8}) {
      const auto check = verify_scaling_invariance(d, side, 64, 0.3, 17);
      CHECK(check.max_gram_diff <= 1e-12);
      CHECK(check.ig_abs_diff <= 1e-10);
    }
  }
}

TEST_CASE("side length one is the identical computation") {
  const auto check = verify_scaling_invariance(25, 1.0, 32, 0.3, 23);
  CHECK(check.max_gram_diff == 0.0);
  CHECK(check.ig_abs_diff == 0.0);
}

TEST_CASE("an unscaled local lengthscale breaks the invariance") {
  // Deliberate mismatch: compare K(X, c sqrt(D)) with K(LX, c sqrt(D)).
  const int d = 50, n = 64;
  const double c = 0.3, side = 0.25;
  const Eigen::MatrixXd x = adascale::sobol_sequence(n, d, 29, true);
  const auto params =
      adascale::KernelParams::isotropic(d, c * std::sqrt(static_cast<double>(d)));
  const Eigen::MatrixXd k1 = adascale::gram(x, params);
  const Eigen::MatrixXd k2 = adascale::gram(side * x, params);
  CHECK((k1 - k2).cwiseAbs().maxCoeff() > 0.1);
}
