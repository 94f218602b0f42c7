// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "adascale/hyperfit.hpp"
#include "adascale/prior_sample.hpp"
#include "adascale/rng.hpp"
#include "adascale/sobol.hpp"

using adascale::FitConfig;
using adascale::FitMode;
using adascale::KernelParams;
using adascale::LengthscalePrior;
using adascale::make_prior;
using adascale::PriorKind;

TEST_CASE("prior locations follow the scaling rule") {
  const LengthscalePrior base = make_prior(PriorKind::AdaScale, 1, 1.0);
  CHECK(base.mu[0] == doctest::Approx(1.4142135624).epsilon(1e-10));
  CHECK(base.sigma[0] == doctest::Approx(1.7320508076).epsilon(1e-10));

  const LengthscalePrior ada = make_prior(PriorKind::AdaScale, 100, 0.8);
  CHECK(ada.mu.size() == 100);
  CHECK(ada.mu[0] == doctest::Approx(3.4936551045).epsilon(1e-10));
  CHECK(ada.mu.minCoeff() == ada.mu.maxCoeff());

  const LengthscalePrior dscaled = make_prior(PriorKind::DScaled, 100);
  CHECK(dscaled.mu[0] == doctest::Approx(3.7167986549).epsilon(1e-10));

  CHECK_THROWS_AS(make_prior(PriorKind::AdaScale, 10, 0.0),
                  adascale::InvalidTrustRegion);
  CHECK_THROWS_AS(make_prior(PriorKind::AdaScale, 10, -0.5),
                  adascale::InvalidTrustRegion);
}

TEST_CASE("prior mode scales linearly in the side length") {
  for (double l1 : {0.1, 0.4, 0.8}) {
    for (double l2 : {0.2, 1.0, 1.6}) {
      const auto p1 = make_prior(PriorKind::AdaScale, 30, l1);
      const auto p2 = make_prior(PriorKind::AdaScale, 30, l2);
      CHECK(p1.mode()[0] / p2.mode()[0] ==
            doctest::Approx(l1 / l2).epsilon(1e-12));
    }
  }
}

TEST_CASE("flat prior makes the MAP objective exactly the negative MLL") {
  std::mt19937_64 gen(3);
  const int n = 10, d = 3;
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = adascale::standard_normal(gen);
    for (int j = 0; j < d; ++j) x(i, j) = adascale::uniform01(gen);
  }
  const KernelParams params = KernelParams::isotropic(d, 0.5, 1.0, 1e-3);
  const LengthscalePrior none = make_prior(PriorKind::None, d);
  adascale::NoisePrior noise_prior;

  const auto res = adascale::neg_map_objective(params, x, y, none, noise_prior);
  const double mll = adascale::log_marginal_likelihood(params, x, y).value;
  // The noise prior always applies; subtract it back out for the check.
  const double log_noise = std::log(params.noise_variance);
  const double z = (log_noise - noise_prior.log_location) / noise_prior.scale;
  const double noise_term = -log_noise - std::log(noise_prior.scale) -
                            0.5 * std::log(2.0 * std::numbers::pi) -
                            0.5 * z * z;
  CHECK(res.value - (-noise_term) == doctest::Approx(-mll).epsilon(1e-12));
}

TEST_CASE("with no data the objective is minimized at the prior mode") {
  const int d = 100;
  const LengthscalePrior prior = make_prior(PriorKind::AdaScale, d, 0.8);
  const Eigen::MatrixXd x(0, d);
  const Eigen::VectorXd y(0);
  adascale::NoisePrior noise_prior;

  // exp(mu - sigma^2) for mu = sqrt(2) + log 8, sigma^2 = 3.
  const double expected_mode = 1.6382934227;
  const double step = 1e-4;

  KernelParams at_mode;
  at_mode.lengthscales = Eigen::VectorXd::Constant(d, expected_mode);
  at_mode.noise_variance = noise_prior.mode();
  const double value_mode =
      adascale::neg_map_objective(at_mode, x, y, prior, noise_prior).value;

  for (double factor : {1.0 + step, 1.0 - step}) {
    KernelParams nearby = at_mode;
    nearby.lengthscales *= factor;
    const double value =
        adascale::neg_map_objective(nearby, x, y, prior, noise_prior).value;
    CHECK(value > value_mode);
  }

  // And the gradient vanishes there.
  const auto res =
      adascale::neg_map_objective(at_mode, x, y, prior, noise_prior);
  CHECK(res.grad.lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("MAP objective gradient matches finite differences") {
  std::mt19937_64 gen(11);
  const int n = 15, d = 5;
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = adascale::standard_normal(gen);
    for (int j = 0; j < d; ++j) x(i, j) = adascale::uniform01(gen);
  }
  const LengthscalePrior prior = make_prior(PriorKind::AdaScale, d, 0.4);
  adascale::NoisePrior noise_prior;

  KernelParams params;
  params.lengthscales = Eigen::VectorXd(d);
  for (int j = 0; j < d; ++j) {
    params.lengthscales[j] = std::exp(0.4 * adascale::standard_normal(gen));
  }
  params.noise_variance = 1e-3;

  const auto res = adascale::neg_map_objective(params, x, y, prior, noise_prior);
  const double h = 1e-5;
  for (int j = 0; j <= d; ++j) {
    KernelParams up = params, down = params;
    if (j < d) {
      up.lengthscales[j] *= std::exp(h);
      down.lengthscales[j] *= std::exp(-h);
    } else {
      up.noise_variance *= std::exp(h);
      down.noise_variance *= std::exp(-h);
    }
    const double fd =
        (adascale::neg_map_objective(up, x, y, prior, noise_prior).value -
         adascale::neg_map_objective(down, x, y, prior, noise_prior).value) /
        (2.0 * h);
    CHECK(std::abs(res.grad[j] - fd) / std::max(1.0, std::abs(fd)) <= 1e-4);
  }
}

TEST_CASE("MAP fit recovers a known isotropic lengthscale within x2") {
  const int d = 5, n = 200;
  const double true_ell = 0.3;
  const auto truth = adascale::sample_prior_objective(d, true_ell, 2048, 17);
  const Eigen::MatrixXd x = adascale::sobol_sequence(n, d, 17, true);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y[i] = truth(x.row(i).transpose());
  // Standardize as the optimizer loop would.
  y.array() -= y.mean();
  y /= std::sqrt(y.array().square().mean());

  FitConfig config;
  config.mode = FitMode::Map;
  const LengthscalePrior prior = make_prior(PriorKind::DScaled, d);
  const KernelParams fitted = adascale::fit(x, y, config, prior, 3);

  CHECK(fitted.signal_variance == 1.0);
  const double geo_mean =
      std::exp(fitted.lengthscales.array().log().mean());
  CHECK(geo_mean > true_ell / 2.0);
  CHECK(geo_mean < true_ell * 2.0);
}

TEST_CASE("single observation leaves the posterior at the prior mode") {
  const int d = 8;
  Eigen::MatrixXd x(1, d);
  x.setConstant(0.5);
  Eigen::VectorXd y(1);
  y << 0.3;
  FitConfig config;
  const LengthscalePrior prior = make_prior(PriorKind::AdaScale, d, 0.8);
  const KernelParams fitted = adascale::fit(x, y, config, prior, 5);
  const Eigen::VectorXd mode = prior.mode();
  for (int j = 0; j < d; ++j) {
    CHECK(std::abs(fitted.lengthscales[j] - mode[j]) / mode[j] < 0.1);
  }
}

TEST_CASE("MLE respects its box constraints on a pathological dataset") {
  Eigen::MatrixXd x(2, 3);
  x << 0.0, 0.0, 0.0, 1e-7, 0.0, 0.0;  // nearly duplicated inputs
  Eigen::VectorXd y(2);
  y << -1.0, 1.0;  // violently different outputs
  FitConfig config;
  config.mode = FitMode::Mle;
  const KernelParams fitted =
      adascale::fit(x, y, config, make_prior(PriorKind::None, 3), 7);
  CHECK((fitted.lengthscales.array() >= 0.005 - 1e-12).all());
  CHECK((fitted.lengthscales.array() <= 4.0 + 1e-12).all());
  CHECK(fitted.signal_variance >= 0.05 - 1e-12);
  CHECK(fitted.signal_variance <= 20.0 + 1e-12);
  CHECK(fitted.noise_variance >= 1e-6 - 1e-18);
  CHECK(fitted.noise_variance <= 1e-2 + 1e-12);
}

TEST_CASE("fit is deterministic in the seed") {
  std::mt19937_64 gen(19);
  const int n = 25, d = 4;
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = adascale::standard_normal(gen);
    for (int j = 0; j < d; ++j) x(i, j) = adascale::uniform01(gen);
  }
  FitConfig config;
  const LengthscalePrior prior = make_prior(PriorKind::AdaScale, d, 0.4);
  const KernelParams a = adascale::fit(x, y, config, prior, 21);
  const KernelParams b = adascale::fit(x, y, config, prior, 21);
  CHECK(a.lengthscales == b.lengthscales);
  CHECK(a.noise_variance == b.noise_variance);
}

TEST_CASE("MAP keeps the signal variance fixed at one") {
  std::mt19937_64 gen(23);
  const int n = 30, d = 3;
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = 3.0 * adascale::standard_normal(gen);
    for (int j = 0; j < d; ++j) x(i, j) = adascale::uniform01(gen);
  }
  FitConfig config;
  const KernelParams fitted =
      adascale::fit(x, y, config, make_prior(PriorKind::DScaled, d), 31);
  CHECK(fitted.signal_variance == 1.0);
}
