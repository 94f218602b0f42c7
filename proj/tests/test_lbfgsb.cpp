// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "adascale/lbfgsb.hpp"
#include "adascale/rng.hpp"

using adascale::BoxBounds;
using adascale::bounded_minimize;
using adascale::MinimizeOptions;
using adascale::MinimizeResult;

namespace {

BoxBounds box1d(double lo, double hi) {
  return BoxBounds(Eigen::VectorXd::Constant(1, lo),
                   Eigen::VectorXd::Constant(1, hi));
}

}  // namespace

TEST_CASE("monotone objective stops at the active bound") {
  const adascale::ValueObjective f = [](const Eigen::VectorXd& x) {
    return (x[0] - 2.0) * (x[0] - 2.0);
  };
  const MinimizeResult res =
      bounded_minimize(f, box1d(0.0, 1.0), Eigen::VectorXd::Constant(1, 0.3));
  CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("quadratic bowl with analytic gradient") {
  const adascale::GradObjective f = [](const Eigen::VectorXd& x,
                                       Eigen::VectorXd* g) {
    if (g != nullptr) *g = 2.0 * x;
    return x.squaredNorm();
  };
  Eigen::VectorXd x0(2);
  x0 << 0.5, -0.5;
  const BoxBounds box(Eigen::VectorXd::Constant(2, -1.0),
                      Eigen::VectorXd::Constant(2, 1.0));
  const MinimizeResult res = bounded_minimize(f, box, x0);
  CHECK(res.x.norm() < 1e-7);
  CHECK(res.value < 1e-12);
  CHECK(res.converged);
}

TEST_CASE("Rosenbrock reaches the known minimizer") {
  const adascale::GradObjective f = [](const Eigen::VectorXd& x,
                                       Eigen::VectorXd* g) {
    const double a = x[1] - x[0] * x[0];
    const double b = 1.0 - x[0];
    if (g != nullptr) {
      g->resize(2);
      (*g)[0] = -400.0 * a * x[0] - 2.0 * b;
      (*g)[1] = 200.0 * a;
    }
    return 100.0 * a * a + b * b;
  };
  Eigen::VectorXd x0(2);
  x0 << -1.0, 1.0;
  const BoxBounds box(Eigen::VectorXd::Constant(2, -2.0),
                      Eigen::VectorXd::Constant(2, 2.0));
  MinimizeOptions options;
  options.max_iter = 500;
  options.tol = 1e-9;
  const MinimizeResult res = bounded_minimize(f, box, x0, options);
  CHECK(res.value < 1e-8);
  CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(res.x[1] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("Rosenbrock with finite-difference fallback") {
  const adascale::ValueObjective f = [](const Eigen::VectorXd& x) {
    const double a = x[1] - x[0] * x[0];
    const double b = 1.0 - x[0];
    return 100.0 * a * a + b * b;
  };
  Eigen::VectorXd x0(2);
  x0 << -1.0, 1.0;
  const BoxBounds box(Eigen::VectorXd::Constant(2, -2.0),
                      Eigen::VectorXd::Constant(2, 2.0));
  MinimizeOptions options;
  options.max_iter = 500;
  options.tol = 1e-8;
  const MinimizeResult res = bounded_minimize(f, box, x0, options);
  CHECK(res.value < 1e-8);
}

TEST_CASE("never leaves the box and never exceeds the start value") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int dim = 1 + static_cast<int>(gen() % 8);
    Eigen::VectorXd lo(dim), hi(dim), center(dim), x0(dim);
    Eigen::MatrixXd b(dim, dim);
    for (int i = 0; i < dim; ++i) {
      lo[i] = -1.0 - adascale::uniform01(gen);
      hi[i] = 1.0 + adascale::uniform01(gen);
      center[i] = 3.0 * (adascale::uniform01(gen) - 0.5);
      x0[i] = lo[i] + (hi[i] - lo[i]) * adascale::uniform01(gen);
      for (int j = 0; j < dim; ++j) b(i, j) = adascale::standard_normal(gen);
    }
    const Eigen::MatrixXd q =
        b * b.transpose() + 0.1 * Eigen::MatrixXd::Identity(dim, dim);
    const adascale::GradObjective f = [&](const Eigen::VectorXd& x,
                                          Eigen::VectorXd* g) {
      const Eigen::VectorXd d = x - center;
      if (g != nullptr) *g = 2.0 * q * d;
      return d.dot(q * d);
    };
    const BoxBounds box(lo, hi);
    const double f0 = f(x0, nullptr);
    const MinimizeResult res = bounded_minimize(f, box, x0);
    CHECK(box.contains(res.x, 1e-12));
    CHECK(res.value <= f0 + 1e-12);
  }
}

TEST_CASE("non-finite objective raises") {
  const adascale::ValueObjective f = [](const Eigen::VectorXd& x) {
    return x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN()
                      : (x[0] - 2.0) * (x[0] - 2.0);
  };
  CHECK_THROWS_AS(bounded_minimize(f, box1d(0.0, 1.0),
                                   Eigen::VectorXd::Constant(1, 0.3)),
                  adascale::NonFiniteObjective);
}
