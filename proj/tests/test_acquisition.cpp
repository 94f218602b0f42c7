// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "adascale/acquisition.hpp"
#include "adascale/normal.hpp"
#include "adascale/rng.hpp"

using adascale::AcqOptConfig;
using adascale::BoxBounds;
using adascale::GpModel;
using adascale::KernelParams;
using adascale::log_ei;
using adascale::optimize_acq;

TEST_CASE("z = 0 collapses to the log normal density") {
  CHECK(log_ei(1.0, 1.0, 1.0) == doctest::Approx(-0.9189385332).epsilon(1e-10));
}

TEST_CASE("deterministic improvement limit") {
  CHECK(log_ei(0.0, 1e-12, 1.0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(log_ei(1.0, 0.0, 3.5) == doctest::Approx(std::log(2.5)).epsilon(1e-12));
  CHECK(log_ei(1.0, 0.0, 1.0) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("z = -5 tail value") {
  // EI = phi(5) - 5 Phi(-5) = 5.346166e-8 by high-precision evaluation.
  CHECK(log_ei(5.0, 1.0, 0.0) == doctest::Approx(-16.7443012).epsilon(1e-6));
}

TEST_CASE("finite far into the no-improvement tail") {
  const double v30 = log_ei(30.0, 1.0, 0.0);
  CHECK(std::isfinite(v30));
  CHECK(v30 == doctest::Approx(-457.7246537610).epsilon(1e-9));
  CHECK(std::isfinite(log_ei(300.0, 1.0, 0.0)));
}

TEST_CASE("exp(log_ei) matches the direct formula away from the tails") {
  for (double z = -3.0; z <= 3.0; z += 0.125) {
    for (double sd : {1e-3, 0.1, 1.0, 10.0}) {
      const double mean = -z * sd;  // with best = 0
      const auto logs = adascale::std_normal_logs(z);
      const double direct =
          sd * (std::exp(logs.log_pdf) + z * std::exp(logs.log_cdf));
      const double rel =
          std::abs(std::exp(log_ei(mean, sd, 0.0)) - direct) / direct;
      CHECK(rel < 1e-6);
    }
  }
}

TEST_CASE("log EI increases with uncertainty at or below the incumbent") {
  for (double z : {-8.0, -4.0, -1.0, 0.0}) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double sd = 1e-3; sd < 20.0; sd *= 1.7) {
      const double mean = -z * sd;
      const double value = log_ei(mean, sd, 0.0);
      CHECK(value > prev);
      prev = value;
    }
  }
  // Also along increasing std with the gap fixed (z varies with std).
  for (double gap : {0.0, 0.5, 2.0}) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double sd = 1e-3; sd < 20.0; sd *= 1.5) {
      const double value = log_ei(gap, sd, 0.0);  // z = -gap/sd <= 0
      CHECK(value > prev);
      prev = value;
    }
  }
}

TEST_CASE("flat posterior ties break to the lowest-index raw sample") {
  const GpModel model = GpModel::prior(2, KernelParams::isotropic(2, 0.5));
  const BoxBounds box = BoxBounds::unit_cube(2);
  AcqOptConfig config;
  const Eigen::VectorXd x = optimize_acq(model, 0.0, box, config, 42);
  // All candidates score identically; refinement cannot strictly improve,
  // so the first raw Sobol point must be returned.
  const Eigen::MatrixXd raw =
      adascale::sobol_in_box(config.n_raw, box, adascale::derive_seed(42, 0), true);
  CHECK((x - raw.row(0).transpose()).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("one observation at the center pushes the proposal away") {
  Eigen::MatrixXd train_x(1, 1);
  train_x << 0.5;
  Eigen::VectorXd train_y(1);
  train_y << 0.0;
  const GpModel model(train_x, train_y,
                      KernelParams::isotropic(1, 0.2, 1.0, 1e-6));
  const BoxBounds box = BoxBounds::unit_cube(1);

  // Brute-force scan as the oracle for where log EI peaks.
  double best_scan = -1e300, best_scan_x = 0.5;
  for (int i = 0; i <= 10000; ++i) {
    const double t = i / 10000.0;
    const auto [mean, variance] = model.posterior_one(
        Eigen::VectorXd::Constant(1, t));
    const double value =
        log_ei(mean, std::sqrt(std::max(variance, 1e-18)), 0.0);
    if (value > best_scan) {
      best_scan = value;
      best_scan_x = t;
    }
  }
  CHECK(std::abs(best_scan_x - 0.5) > 0.05);

  AcqOptConfig config;
  config.max_iter = 50;
  const Eigen::VectorXd x = optimize_acq(model, 0.0, box, config, 7);
  CHECK(std::abs(x[0] - 0.5) > 0.05);

  const auto [mean, variance] = model.posterior_one(x);
  const double achieved =
      log_ei(mean, std::sqrt(std::max(variance, 1e-18)), 0.0);
  CHECK(achieved >= best_scan - 1e-3);
}

TEST_CASE("refinement never loses to the raw samples") {
  std::mt19937_64 gen(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 1 + static_cast<int>(gen() % 5);
    const int n = 4 + static_cast<int>(gen() % 12);
    Eigen::MatrixXd x(n, dim);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      y[i] = adascale::standard_normal(gen);
      for (int j = 0; j < dim; ++j) x(i, j) = adascale::uniform01(gen);
    }
    const GpModel model(x, y, KernelParams::isotropic(dim, 0.3, 1.0, 1e-4));
    const BoxBounds box = BoxBounds::unit_cube(dim);
    const double best = y.minCoeff();
    AcqOptConfig config;
    const std::uint64_t seed = gen();

    const Eigen::VectorXd x_next =
        optimize_acq(model, best, box, config, seed);
    CHECK(box.contains(x_next, 1e-12));

    const Eigen::MatrixXd raw = adascale::sobol_in_box(
        config.n_raw, box, adascale::derive_seed(seed, 0), true);
    double best_raw = -1e300;
    for (int i = 0; i < config.n_raw; ++i) {
      const auto [mean, variance] =
          model.posterior_one(raw.row(i).transpose());
      best_raw = std::max(
          best_raw,
          log_ei(mean, std::sqrt(std::max(variance, 1e-18)), best));
    }
    const auto [mean, variance] = model.posterior_one(x_next);
    const double achieved =
        log_ei(mean, std::sqrt(std::max(variance, 1e-18)), best);
    CHECK(achieved >= best_raw - 1e-12);
  }
}

TEST_CASE("optimizer is deterministic in (model, seed)") {
  Eigen::MatrixXd x(3, 2);
  x << 0.2, 0.3, 0.8, 0.1, 0.5, 0.9;
  Eigen::VectorXd y(3);
  y << 0.4, -0.2, 0.1;
  const GpModel model(x, y, KernelParams::isotropic(2, 0.4, 1.0, 1e-4));
  const BoxBounds box = BoxBounds::unit_cube(2);
  const AcqOptConfig config;
  const Eigen::VectorXd a = optimize_acq(model, -0.2, box, config, 5);
  const Eigen::VectorXd b = optimize_acq(model, -0.2, box, config, 5);
  CHECK(a == b);
}
