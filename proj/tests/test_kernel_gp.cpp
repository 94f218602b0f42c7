// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "adascale/gp.hpp"
#include "adascale/kernel.hpp"
#include "adascale/prior_sample.hpp"
#include "adascale/rng.hpp"
#include "adascale/sobol.hpp"

using adascale::GpModel;
using adascale::KernelParams;
using adascale::MllResult;

namespace {

Eigen::MatrixXd random_matrix(std::mt19937_64& gen, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = adascale::uniform01(gen);
  return m;
}

}  // namespace

TEST_CASE("kernel value at zero distance is the signal variance") {
  const KernelParams params = KernelParams::isotropic(3, 0.7, 2.5);
  Eigen::VectorXd x(3);
  x << 0.1, 0.2, 0.3;
  CHECK(adascale::matern52_ard(x, x, params) == 2.5);
}

TEST_CASE("kernel value at unit scaled distance") {
  // (1 + sqrt(5) + 5/3) exp(-sqrt(5)), high-precision reference.
  const KernelParams params = KernelParams::isotropic(1, 1.0);
  Eigen::VectorXd a(1), b(1);
  a << 0.0;
  b << 1.0;
  CHECK(adascale::matern52_ard(a, b, params) ==
        doctest::Approx(0.5239941088).epsilon(1e-9));
}

TEST_CASE("ARD lengthscales weight each coordinate") {
  KernelParams params;
  params.lengthscales = Eigen::VectorXd(2);
  params.lengthscales << 1.0, 2.0;
  Eigen::VectorXd a(2), b(2);
  a << 0.0, 0.0;
  b << 1.0, 2.0;  // r = sqrt(1 + 1) = sqrt(2)
  CHECK(adascale::matern52_ard(a, b, params) ==
        doctest::Approx(0.3172833640).epsilon(1e-9));
}

TEST_CASE("kernel is stationary") {
  const KernelParams params = KernelParams::isotropic(4, 0.4);
  std::mt19937_64 gen(3);
  Eigen::VectorXd x(4), y(4), c(4);
  for (int i = 0; i < 4; ++i) {
    x[i] = adascale::uniform01(gen);
    y[i] = adascale::uniform01(gen);
    c[i] = adascale::uniform01(gen);
  }
  CHECK(adascale::matern52_ard(x, y, params) ==
        doctest::Approx(adascale::matern52_ard(x + c, y + c, params))
            .epsilon(1e-14));
}

TEST_CASE("scaling identity: (L x, c L sqrt(D)) equals (x, c sqrt(D))") {
  const int dim = 16;
  const double c = 0.3, side = 0.37;
  const double sd = std::sqrt(static_cast<double>(dim));
  const KernelParams global = KernelParams::isotropic(dim, c * sd);
  const KernelParams local = KernelParams::isotropic(dim, c * side * sd);
  std::mt19937_64 gen(5);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd x(dim), y(dim);
    for (int i = 0; i < dim; ++i) {
      x[i] = adascale::uniform01(gen);
      y[i] = adascale::uniform01(gen);
    }
    const double kg = adascale::matern52_ard(x, y, global);
    const double kl = adascale::matern52_ard(side * x, side * y, local);
    CHECK(std::abs(kg - kl) < 1e-12);
  }
}

TEST_CASE("gram basics: single point, duplicates, decay") {
  const KernelParams params = KernelParams::isotropic(2, 0.5, 1.7);

  const Eigen::MatrixXd k1 = adascale::gram(Eigen::MatrixXd::Zero(1, 2), params);
  CHECK(k1(0, 0) == 1.7);

  Eigen::MatrixXd dup(2, 2);
  dup << 0.3, 0.4, 0.3, 0.4;
  const Eigen::MatrixXd k2 = adascale::gram(dup, params);
  CHECK(k2(0, 1) == 1.7);
  CHECK(k2(1, 0) == 1.7);

  Eigen::MatrixXd far(2, 2);
  far << 0.0, 0.0, 100.0, 100.0;
  const Eigen::MatrixXd k3 = adascale::gram(far, params);
  CHECK(std::abs(k3(0, 1)) < 1e-10 * 1.7);
}

TEST_CASE("gram is PSD on random designs up to N=200, D=100") {
  std::mt19937_64 gen(17);
  for (const auto [n, d] : {std::pair{200, 100}, std::pair{50, 3}}) {
    const Eigen::MatrixXd x = random_matrix(gen, n, d);
    const Eigen::MatrixXd k =
        adascale::gram(x, KernelParams::isotropic(d, 0.5));
    CHECK(k.isApprox(k.transpose()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k);
    CHECK(eig.eigenvalues().minCoeff() > -1e-8);
  }
}

TEST_CASE("posterior with no data reverts to the prior exactly") {
  const GpModel model =
      GpModel::prior(2, KernelParams::isotropic(2, 0.5, 1.3));
  const auto [mean, variance] =
      adascale::posterior(model, Eigen::MatrixXd::Constant(3, 2, 0.5));
  CHECK(mean.isZero(0.0));
  CHECK((variance.array() == 1.3).all());
}

TEST_CASE("one-point posterior closed form") {
  Eigen::MatrixXd x(1, 1);
  x << 0.5;
  Eigen::VectorXd y(1);
  y << 1.0;
  const GpModel model(x, y, KernelParams::isotropic(1, 0.5, 1.0, 1.0));
  const auto [mean, variance] = model.posterior_one(x.row(0).transpose());
  CHECK(mean == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(variance == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("posterior interpolates with tiny noise") {
  std::mt19937_64 gen(23);
  const Eigen::MatrixXd x = random_matrix(gen, 12, 3);
  Eigen::VectorXd y(12);
  for (int i = 0; i < 12; ++i) y[i] = adascale::standard_normal(gen);
  const GpModel model(x, y, KernelParams::isotropic(3, 0.6, 1.0, 1e-6));
  Eigen::VectorXd mean, variance;
  model.posterior(x, mean, variance);
  for (int i = 0; i < 12; ++i) {
    CHECK(std::abs(mean[i] - y[i]) < 1e-3);
    CHECK(variance[i] >= 0.0);
    CHECK(variance[i] <= 1.0 + 1e-8);
  }
}

TEST_CASE("posterior far from data reverts toward the prior") {
  Eigen::MatrixXd x(1, 2);
  x << 0.5, 0.5;
  Eigen::VectorXd y(1);
  y << 2.0;
  const GpModel model(x, y, KernelParams::isotropic(2, 0.2));
  const auto [mean, variance] =
      model.posterior_one(Eigen::VectorXd::Constant(2, 40.0));
  CHECK(std::abs(mean) < 1e-10);
  CHECK(variance == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("model caches are reproducible") {
  std::mt19937_64 gen(29);
  const Eigen::MatrixXd x = random_matrix(gen, 20, 4);
  Eigen::VectorXd y(20);
  for (int i = 0; i < 20; ++i) y[i] = adascale::standard_normal(gen);
  const KernelParams params = KernelParams::isotropic(4, 0.4);
  const GpModel a(x, y, params);
  const GpModel b(x, y, params);
  CHECK((a.alpha() - b.alpha()).lpNorm<Eigen::Infinity>() < 1e-10);
  CHECK((a.chol().lower - b.chol().lower).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("log marginal likelihood closed form for one point") {
  Eigen::MatrixXd x(1, 1);
  x << 0.3;
  Eigen::VectorXd y(1);
  y << 0.0;
  const MllResult res = adascale::log_marginal_likelihood(
      KernelParams::isotropic(1, 1.0, 1.0, 1.0), x, y);
  // -(1/2) log 2 - (1/2) log 2 pi.
  CHECK(res.value == doctest::Approx(-1.2655121235).epsilon(1e-10));
}

TEST_CASE("zero observations kill the data-fit term") {
  std::mt19937_64 gen(31);
  const Eigen::MatrixXd x = random_matrix(gen, 8, 2);
  const Eigen::VectorXd y = Eigen::VectorXd::Zero(8);
  const KernelParams params = KernelParams::isotropic(2, 0.5, 1.0, 1e-3);
  const MllResult res = adascale::log_marginal_likelihood(params, x, y);

  Eigen::MatrixXd k = adascale::gram(x, params);
  k.diagonal().array() += params.noise_variance;
  const double logdet = adascale::cholesky_logdet(k, 0.0).log_det;
  const double expected = -0.5 * logdet - 4.0 * std::log(2.0 * std::numbers::pi);
  CHECK(res.value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("MLL gradient matches central finite differences") {
  std::mt19937_64 gen(37);
  const int n = 20, d = 5;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd x = random_matrix(gen, n, d);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = adascale::standard_normal(gen);
    KernelParams params;
    params.lengthscales = Eigen::VectorXd(d);
    for (int j = 0; j < d; ++j) {
      params.lengthscales[j] = std::exp(adascale::standard_normal(gen) * 0.3 - 0.7);
    }
    params.signal_variance = std::exp(adascale::standard_normal(gen) * 0.3);
    params.noise_variance = std::exp(adascale::standard_normal(gen) * 0.5 - 6.0);
    params.noise_variance = std::max(params.noise_variance, 1e-6);

    const MllResult res = adascale::log_marginal_likelihood(params, x, y);

    const double h = 1e-5;
    const auto value_at = [&](const KernelParams& p) {
      return adascale::log_marginal_likelihood_value(p, x, y);
    };
    for (int j = 0; j <= d + 1; ++j) {
      KernelParams up = params, down = params;
      double analytic = 0.0;
      if (j < d) {
        up.lengthscales[j] *= std::exp(h);
        down.lengthscales[j] *= std::exp(-h);
        analytic = res.grad_log_lengthscales[j];
      } else if (j == d) {
        up.noise_variance *= std::exp(h);
        down.noise_variance *= std::exp(-h);
        analytic = res.grad_log_noise;
      } else {
        up.signal_variance *= std::exp(h);
        down.signal_variance *= std::exp(-h);
        analytic = res.grad_log_signal;
      }
      const double fd = (value_at(up) - value_at(down)) / (2.0 * h);
      const double rel = std::abs(analytic - fd) / std::max(1.0, std::abs(fd));
      worst = std::max(worst, rel);
      CHECK(rel <= 1e-4);
    }
  }
  MESSAGE("worst relative gradient error: ", worst);
}

TEST_CASE("prior sample objective is deterministic in the seed") {
  const auto f = adascale::sample_prior_objective(6, 0.1, 512, 99);
  const auto g = adascale::sample_prior_objective(6, 0.1, 512, 99);
  std::mt19937_64 gen(41);
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd x(6);
    for (int i = 0; i < 6; ++i) x[i] = adascale::uniform01(gen);
    CHECK(f(x) == g(x));
  }
}

TEST_CASE("prior sample variance is near the unit signal variance") {
  const auto f = adascale::sample_prior_objective(5, 0.2, 2048, 1);
  const Eigen::MatrixXd pts = adascale::sobol_sequence(10000, 5, 0, true);
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < pts.rows(); ++i) {
    const double v = f(pts.row(i).transpose());
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / 1e4;
  const double var = sum_sq / 1e4 - mean * mean;
  CHECK(var > 0.5);
  CHECK(var < 2.0);
}

TEST_CASE("prior sample covariance approximates the kernel") {
  // Monte-Carlo covariance over pairs at fixed separation vs the exact
  // kernel value, for a few separations.
  const int dim = 3, m = 4096;
  const double ell = 0.2;
  const KernelParams params = KernelParams::isotropic(dim, ell);
  std::mt19937_64 gen(43);
  for (double dist : {0.05, 0.2, 0.5}) {
    double acc = 0.0;
    const int n_pairs = 1000;
    // Average products over independent function draws to estimate E[f(x)f(x')].
    for (int rep = 0; rep < 64; ++rep) {
      const auto f =
          adascale::sample_prior_objective(dim, ell, m, 1000 + rep);
      for (int p = 0; p < n_pairs / 64; ++p) {
        Eigen::VectorXd x(dim), u(dim);
        for (int i = 0; i < dim; ++i) {
          x[i] = adascale::uniform01(gen);
          u[i] = adascale::standard_normal(gen);
        }
        u *= dist / u.norm();
        acc += f(x) * f(x + u);
      }
    }
    const double empirical = acc / (64.0 * (n_pairs / 64));
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd offset = Eigen::VectorXd::Zero(dim);
    offset[0] = dist;
    const double exact = adascale::matern52_ard(zero, offset, params);
    CHECK(std::abs(empirical - exact) < 0.1);
  }
}

TEST_CASE("smaller lengthscale gives rougher samples") {
  const auto fast = adascale::sample_prior_objective(4, 0.05, 2048, 7);
  const auto slow = adascale::sample_prior_objective(4, 0.2, 2048, 7);
  std::mt19937_64 gen(47);
  double fast_diff = 0.0, slow_diff = 0.0;
  for (int t = 0; t < 500; ++t) {
    Eigen::VectorXd x(4), step(4);
    for (int i = 0; i < 4; ++i) {
      x[i] = adascale::uniform01(gen);
      step[i] = adascale::standard_normal(gen);
    }
    step *= 0.01 / step.norm();
    fast_diff += std::abs(fast(x + step) - fast(x));
    slow_diff += std::abs(slow(x + step) - slow(x));
  }
  CHECK(fast_diff > slow_diff);
}
