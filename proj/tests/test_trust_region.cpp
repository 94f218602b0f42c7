// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "adascale/objectives.hpp"
#include "adascale/trust_region.hpp"

using adascale::failure_tolerance;
using adascale::RunConfig;
using adascale::RunRecord;
using adascale::tr_box;
using adascale::TrustRegionState;
using adascale::update_tr;
using adascale::Variant;

namespace {

TrustRegionState default_state(int dim, double side = 0.8) {
  TrustRegionState state;
  state.center = Eigen::VectorXd::Constant(dim, 0.5);
  state.side_length = side;
  state.tau_fail = failure_tolerance(dim, 1);
  return state;
}

}  // namespace

TEST_CASE("failure tolerance formula") {
  CHECK(failure_tolerance(50, 1) == 50);
  CHECK(failure_tolerance(2, 1) == 4);
  CHECK(failure_tolerance(100, 8) == 13);
  CHECK(failure_tolerance(1, 1) == 4);
}

TEST_CASE("trust-region box clips to the domain") {
  const auto domain = adascale::BoxBounds::unit_cube(2);

  auto state = default_state(2, 0.4);
  auto box = tr_box(state, domain);
  CHECK(box.lower.isApproxToConstant(0.3));
  CHECK(box.upper.isApproxToConstant(0.7));

  state.center.setConstant(0.9);
  box = tr_box(state, domain);
  CHECK(box.lower.isApproxToConstant(0.7));
  CHECK(box.upper.isApproxToConstant(1.0));

  state.side_length = 1.6;
  box = tr_box(state, domain);
  CHECK(box.lower.isApproxToConstant(0.0));
  CHECK(box.upper.isApproxToConstant(1.0));
}

TEST_CASE("success streak doubles the side length and caps at l_max") {
  auto state = default_state(10);
  state.succ_count = 2;  // tau_succ = 3
  auto [next, restart] = update_tr(state, -1.0, 0.0);
  CHECK(!restart);
  CHECK(next.side_length == 1.6);
  CHECK(next.succ_count == 0);
  CHECK(next.fail_count == 0);

  next.succ_count = 2;
  auto [capped, restart2] = update_tr(next, -2.0, -1.0);
  CHECK(!restart2);
  CHECK(capped.side_length == 1.6);  // cap binds
}

TEST_CASE("failure streak halves the side length") {
  auto state = default_state(2);  // tau_fail = 4
  state.fail_count = 3;
  auto [next, restart] = update_tr(state, 1.0, 0.0);  // no improvement
  CHECK(!restart);
  CHECK(next.side_length == 0.4);
  CHECK(next.fail_count == 0);
}

TEST_CASE("ties count as failures") {
  auto state = default_state(2);
  auto [next, restart] = update_tr(state, 0.0, 0.0);
  CHECK(next.fail_count == 1);
  CHECK(next.succ_count == 0);
  CHECK(!restart);
}

TEST_CASE("optional relative threshold demotes marginal improvements") {
  auto state = default_state(2);
  auto [strict, r1] = update_tr(state, 0.999, 1.0, 0.0);
  CHECK(strict.succ_count == 1);
  auto [relative, r2] = update_tr(state, 0.999, 1.0, 1e-2);
  CHECK(relative.succ_count == 0);
  CHECK(relative.fail_count == 1);
}

TEST_CASE("dropping below l_min restarts with the initial side length") {
  auto state = default_state(2, 0.5 * 0.0078125 * 2.0);  // one halving above l_min
  CHECK(state.side_length == doctest::Approx(0.0078125));
  state.fail_count = state.tau_fail - 1;
  auto [next, restart] = update_tr(state, 5.0, 0.0);
  CHECK(restart);
  CHECK(next.side_length == 0.8);
  CHECK(next.succ_count == 0);
  CHECK(next.fail_count == 0);
}

TEST_CASE("exactly seven halvings from 0.8 trigger the restart") {
  auto state = default_state(2, 0.8);
  int halvings = 0;
  bool restarted = false;
  for (int step = 0; step < 1000 && !restarted; ++step) {
    state.fail_count = state.tau_fail - 1;
    auto [next, restart] = update_tr(state, 1.0, 0.0);
    restarted = restart;
    state = next;
    ++halvings;
  }
  // 0.8 * 2^-7 = 0.00625 < 0.5^7 = 0.0078125; earlier values stay above.
  CHECK(restarted);
  CHECK(halvings == 7);
}

TEST_CASE("at most one counter is nonzero after any update") {
  auto state = default_state(5);
  const double ys[] = {1.0, 0.5, 2.0, 0.1, 3.0, 4.0, 0.05};
  double incumbent = 10.0;
  for (double y : ys) {
    auto [next, restart] = update_tr(state, y, incumbent);
    state = next;
    incumbent = std::min(incumbent, y);
    CHECK((state.succ_count == 0 || state.fail_count == 0));
  }
}

TEST_CASE("variant wiring") {
  using adascale::FitMode;
  using adascale::PriorKind;
  CHECK(adascale::variant_prior_kind(Variant::AdaScaleTurbo) == PriorKind::AdaScale);
  CHECK(adascale::variant_fit_mode(Variant::AdaScaleTurbo) == FitMode::Map);
  CHECK(adascale::variant_prior_kind(Variant::TurboMle) == PriorKind::None);
  CHECK(adascale::variant_fit_mode(Variant::TurboMle) == FitMode::Mle);
  CHECK(adascale::variant_prior_kind(Variant::DScaledTurbo) == PriorKind::DScaled);
  CHECK(adascale::variant_fit_mode(Variant::DScaledTurbo) == FitMode::Map);
  CHECK(adascale::variant_prior_kind(Variant::DScaledGlobal) == PriorKind::DScaled);
  CHECK(!adascale::variant_uses_trust_region(Variant::DScaledGlobal));
  CHECK(adascale::variant_from_name("adascale_turbo") == Variant::AdaScaleTurbo);
  CHECK(adascale::variant_name(Variant::DScaledGlobal) == "dscaled_global");
  CHECK_THROWS_AS(adascale::variant_from_name("bogus"), adascale::ConfigError);
}

namespace {

RunConfig small_run_config(int dim, int budget) {
  RunConfig config;
  config.dim = dim;
  config.budget = budget;
  config.n_init = 10;
  config.refit_every = 10;
  // Keep unit tests quick; acceptance runs use the full defaults.
  config.acq.max_iter = 10;
  config.fit.max_iter = 40;
  return config;
}

double sphere(const Eigen::VectorXd& z) {
  return (z.array() - 0.5).matrix().squaredNorm();
}

}  // namespace

TEST_CASE("run record keeps exact budget accounting and monotone best") {
  const RunConfig config = small_run_config(3, 60);
  for (Variant variant : {Variant::AdaScaleTurbo, Variant::DScaledGlobal}) {
    const RunRecord record = adascale::run_optimizer(sphere, variant, config, 4);
    REQUIRE(record.valid);
    REQUIRE(static_cast<int>(record.rows.size()) == config.budget);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < record.rows.size(); ++i) {
      const auto& row = record.rows[i];
      CHECK(row.index == static_cast<int>(i));
      best = std::min(best, row.y);
      CHECK(row.best_so_far == best);
      CHECK((row.x.array() >= 0.0).all());
      CHECK((row.x.array() <= 1.0).all());
    }
  }
}

TEST_CASE("restart rows are followed by initialization rows") {
  // A constant objective never improves, so failures accumulate and the
  // trust region must eventually restart.
  const auto constant = [](const Eigen::VectorXd&) { return 1.0; };
  RunConfig config = small_run_config(2, 80);
  const RunRecord record =
      adascale::run_optimizer(constant, Variant::AdaScaleTurbo, config, 9);
  REQUIRE(record.valid);
  REQUIRE(static_cast<int>(record.rows.size()) == config.budget);

  int restarts = 0;
  for (std::size_t i = 0; i < record.rows.size(); ++i) {
    if (!record.rows[i].restart_flag) continue;
    ++restarts;
    // The following min(n_init, remaining) rows are the fresh design at
    // the reset side length.
    const std::size_t take = std::min<std::size_t>(
        config.n_init, record.rows.size() - i - 1);
    for (std::size_t k = 1; k <= take; ++k) {
      CHECK(record.rows[i + k].side_length_at_proposal == 0.8);
      CHECK(!record.rows[i + k].restart_flag);
    }
  }
  // tau_fail = 4 in 2-D, so 7 halvings need 28 failures; an 80-eval run
  // restarts at least once.
  CHECK(restarts >= 1);
}

TEST_CASE("AdaScale rebuilds the prior with the side length in effect") {
  RunConfig config = small_run_config(2, 50);
  const double mu0 = 1.41421356237309504880;
  int fits = 0;
  config.on_fit = [&](const adascale::FitEvent& event) {
    ++fits;
    const double expected =
        mu0 + std::log(event.side_length * std::sqrt(2.0));
    REQUIRE(event.prior.mu.size() == 2);
    CHECK(event.prior.mu[0] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(event.fitted.signal_variance == 1.0);
  };
  adascale::run_optimizer(sphere, Variant::AdaScaleTurbo, config, 10);
  CHECK(fits >= 2);
}

TEST_CASE("global variant always works on the full domain") {
  RunConfig config = small_run_config(2, 40);
  const RunRecord record =
      adascale::run_optimizer(sphere, Variant::DScaledGlobal, config, 3);
  REQUIRE(record.valid);
  for (const auto& row : record.rows) {
    CHECK(row.side_length_at_proposal == 1.0);
    CHECK(!row.restart_flag);
  }
}

TEST_CASE("identical inputs give a bit-identical record") {
  const RunConfig config = small_run_config(2, 40);
  const RunRecord a =
      adascale::run_optimizer(sphere, Variant::AdaScaleTurbo, config, 13);
  const RunRecord b =
      adascale::run_optimizer(sphere, Variant::AdaScaleTurbo, config, 13);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].y == b.rows[i].y);
    CHECK(a.rows[i].x == b.rows[i].x);
    CHECK(a.rows[i].side_length_at_proposal == b.rows[i].side_length_at_proposal);
    CHECK(a.rows[i].restart_flag == b.rows[i].restart_flag);
  }
}

TEST_CASE("different variants share the initialization design") {
  const RunConfig config = small_run_config(3, 25);
  const RunRecord a =
      adascale::run_optimizer(sphere, Variant::AdaScaleTurbo, config, 21);
  const RunRecord b =
      adascale::run_optimizer(sphere, Variant::TurboMle, config, 21);
  for (int i = 0; i < config.n_init; ++i) {
    CHECK(a.rows[i].x == b.rows[i].x);
    CHECK(a.rows[i].y == b.rows[i].y);
  }
}

TEST_CASE("2-D sphere reaches 1e-2 within 100 evaluations") {
  RunConfig config = small_run_config(2, 100);
  config.acq.max_iter = 20;
  const RunRecord record =
      adascale::run_optimizer(sphere, Variant::AdaScaleTurbo, config, 1);
  REQUIRE(record.valid);
  CHECK(record.rows.back().best_so_far < 1e-2);
}

TEST_CASE("objective failure flags a partial record") {
  int calls = 0;
  const auto failing = [&calls](const Eigen::VectorXd& z) {
    ++calls;
    return calls > 15 ? std::numeric_limits<double>::quiet_NaN()
                      : sphere(z);
  };
  const RunConfig config = small_run_config(2, 40);
  const RunRecord record =
      adascale::run_optimizer(failing, Variant::AdaScaleTurbo, config, 2);
  CHECK(!record.valid);
  CHECK(record.rows.size() < 40);
}

TEST_CASE("budget must exceed the initial design") {
  const auto config = small_run_config(2, 10);  // budget == n_init
  CHECK_THROWS_AS(
      adascale::run_optimizer(sphere, Variant::AdaScaleTurbo, config, 0),
      adascale::ConfigError);
}
