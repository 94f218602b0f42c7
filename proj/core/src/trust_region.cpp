// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#include "adascale/trust_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adascale/errors.hpp"
#include "adascale/rng.hpp"
#include "adascale/sobol.hpp"

namespace adascale {
namespace {

// Disjoint seed streams for the RNG consumers inside one run.
constexpr std::uint64_t kInitStream = 1'000'000;
constexpr std::uint64_t kAcqStream = 2'000'000;
constexpr std::uint64_t kFitStream = 3'000'000;

}  // namespace

int failure_tolerance(int dim, int batch_size) {
  if (dim < 1 || batch_size < 1) {
    throw Error("failure_tolerance: dim and batch_size must be >= 1");
  }
  const int numerator = std::max(4, dim);
  return (numerator + batch_size - 1) / batch_size;  // ceil division
}

BoxBounds tr_box(const TrustRegionState& state, const BoxBounds& domain) {
  if (state.center.size() != domain.dim()) {
    throw Error("tr_box: center and domain dimensions differ");
  }
  const double half = state.side_length / 2.0;
  const Eigen::VectorXd lo = (state.center.array() - half).matrix();
  const Eigen::VectorXd hi = (state.center.array() + half).matrix();
  return BoxBounds(domain.clip(lo), domain.clip(hi));
}

std::pair<TrustRegionState, bool> update_tr(TrustRegionState state,
                                            double y_batch_min,
                                            double y_incumbent,
                                            double rel_threshold) {
  const double margin = rel_threshold * std::abs(y_incumbent);
  const bool success = y_batch_min < y_incumbent - margin;
  if (success) {
    state.succ_count += 1;
    state.fail_count = 0;
  } else {
    state.fail_count += 1;
    state.succ_count = 0;
  }
  if (state.succ_count >= state.tau_succ) {
    state.side_length = std::min(state.l_max, 2.0 * state.side_length);
    state.succ_count = 0;
  } else if (state.fail_count >= state.tau_fail) {
    state.side_length /= 2.0;
    state.fail_count = 0;
  }
  bool restart = false;
  if (state.side_length < state.l_min) {
    restart = true;
    state.side_length = state.l_init;
    state.succ_count = 0;
    state.fail_count = 0;
  }
  return {std::move(state), restart};
}

std::string variant_name(Variant variant) {
  switch (variant) {
    case Variant::AdaScaleTurbo: return "adascale_turbo";
    case Variant::TurboMle: return "turbo_mle";
    case Variant::DScaledTurbo: return "dscaled_turbo";
    case Variant::DScaledGlobal: return "dscaled_global";
  }
  throw Error("variant_name: unknown variant");
}

Variant variant_from_name(const std::string& name) {
  if (name == "adascale_turbo") return Variant::AdaScaleTurbo;
  if (name == "turbo_mle") return Variant::TurboMle;
  if (name == "dscaled_turbo") return Variant::DScaledTurbo;
  if (name == "dscaled_global") return Variant::DScaledGlobal;
  throw ConfigError("unknown optimizer variant: '" + name +
                    "' (expected adascale_turbo, turbo_mle, dscaled_turbo, "
                    "or dscaled_global)");
}

PriorKind variant_prior_kind(Variant variant) {
  switch (variant) {
    case Variant::AdaScaleTurbo: return PriorKind::AdaScale;
    case Variant::TurboMle: return PriorKind::None;
    case Variant::DScaledTurbo: return PriorKind::DScaled;
    case Variant::DScaledGlobal: return PriorKind::DScaled;
  }
  throw Error("variant_prior_kind: unknown variant");
}

FitMode variant_fit_mode(Variant variant) {
  return variant == Variant::TurboMle ? FitMode::Mle : FitMode::Map;
}

bool variant_uses_trust_region(Variant variant) {
  return variant != Variant::DScaledGlobal;
}

namespace {

struct RunState {
  std::vector<Eigen::VectorXd> xs;  // data since the last restart
  std::vector<double> ys;
  double y_mean = 0.0;
  double y_sd = 1.0;

  Eigen::MatrixXd x_matrix(Eigen::Index dim) const {
    Eigen::MatrixXd x(xs.size(), dim);
    for (std::size_t i = 0; i < xs.size(); ++i) x.row(i) = xs[i].transpose();
    return x;
  }

  Eigen::VectorXd y_standardized() {
    const Eigen::Map<const Eigen::VectorXd> y(ys.data(),
                                              static_cast<Eigen::Index>(ys.size()));
    y_mean = y.mean();
    const double var = (y.array() - y_mean).square().mean();
    y_sd = var > 1e-24 ? std::sqrt(var) : 1.0;
    return (y.array() - y_mean) / y_sd;
  }

  // Index of the incumbent (minimum y, earliest on ties).
  std::size_t incumbent() const {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < ys.size(); ++i) {
      if (ys[i] < ys[arg]) arg = i;
    }
    return arg;
  }
};

}  // namespace

RunRecord run_optimizer(const BlackBox& objective, Variant variant,
                        const RunConfig& config, std::uint64_t seed) {
  if (config.dim < 1) {
    throw ConfigError("run_optimizer: dim must be >= 1");
  }
  if (config.n_init < 1) {
    throw ConfigError("run_optimizer: n_init must be >= 1");
  }
  if (config.budget <= config.n_init) {
    throw ConfigError("run_optimizer: budget must exceed n_init");
  }
  if (config.refit_every < 1) {
    throw ConfigError("run_optimizer: refit_every must be >= 1");
  }

  const bool use_tr = variant_uses_trust_region(variant);
  const PriorKind prior_kind = variant_prior_kind(variant);
  FitConfig fit_config = config.fit;
  fit_config.mode = variant_fit_mode(variant);

  const BoxBounds domain = BoxBounds::unit_cube(config.dim);

  RunRecord record;
  record.seed = seed;
  record.variant = variant;
  record.rows.reserve(config.budget);

  TrustRegionState state;
  state.l_init = use_tr ? config.l_init : 1.0;
  state.side_length = state.l_init;
  state.tau_fail = failure_tolerance(config.dim, config.batch_size);
  state.center = Eigen::VectorXd::Constant(config.dim, 0.5);

  RunState run;
  int n = 0;
  int restart_count = 0;
  int fit_count = 0;
  double best_raw = std::numeric_limits<double>::infinity();
  std::optional<KernelParams> last_params;

  // Evaluates one point and appends the trace row. Returns false when the
  // objective produced a non-finite value, which invalidates the run.
  const auto evaluate = [&](const Eigen::VectorXd& x) -> bool {
    const double y = objective(x);
    const bool ok = std::isfinite(y);
    if (ok) best_raw = std::min(best_raw, y);
    EvalRow row;
    row.index = n;
    row.x = x;
    row.y = y;
    row.best_so_far = best_raw;
    row.side_length_at_proposal = state.side_length;
    record.rows.push_back(std::move(row));
    if (ok) {
      run.xs.push_back(x);
      run.ys.push_back(y);
      ++n;
    }
    return ok;
  };

  // Draws and evaluates an initialization design (truncated near the end
  // of the budget). Returns false on objective failure.
  const auto evaluate_init_design = [&]() -> bool {
    const Eigen::MatrixXd design =
        sobol_sequence(config.n_init, config.dim,
                       derive_seed(seed, kInitStream + restart_count), true);
    const int take = std::min(config.n_init, config.budget - n);
    for (int i = 0; i < take; ++i) {
      if (!evaluate(design.row(i).transpose())) return false;
    }
    return true;
  };

  GpModel model = GpModel::prior(
      config.dim, KernelParams::isotropic(config.dim, 1.0, 1.0, 1e-6));

  // Rebuilds the surrogate. A full fit re-estimates hyperparameters (for
  // the AdaScale prior this is where the current L enters); otherwise only
  // the data caches refresh under the previous hyperparameters.
  const auto refit = [&](bool full) {
    const Eigen::MatrixXd x = run.x_matrix(config.dim);
    const Eigen::VectorXd y_std = run.y_standardized();
    if (full || !last_params.has_value()) {
      const LengthscalePrior prior =
          make_prior(prior_kind, config.dim, state.side_length);
      const KernelParams params =
          fit(x, y_std, fit_config, prior,
              derive_seed(seed, kFitStream + fit_count), last_params);
      ++fit_count;
      last_params = params;
      if (config.on_fit) {
        FitEvent event;
        event.eval_count = n;
        event.side_length = state.side_length;
        event.prior = prior;
        event.fitted = params;
        config.on_fit(event);
      }
    }
    model = GpModel(x, y_std, *last_params);
  };

  if (!evaluate_init_design()) {
    record.valid = false;
    return record;
  }
  refit(true);
  int evals_since_fit = 0;

  while (n < config.budget) {
    const std::size_t inc = run.incumbent();
    const double y_incumbent = run.ys[inc];
    state.center = run.xs[inc];
    const BoxBounds box = use_tr ? tr_box(state, domain) : domain;
    const double best_std = (y_incumbent - run.y_mean) / run.y_sd;

    const Eigen::VectorXd x_next = optimize_acq(
        model, best_std, box, config.acq, derive_seed(seed, kAcqStream + n));
    if (!evaluate(x_next)) {
      record.valid = false;
      return record;
    }
    ++evals_since_fit;

    bool restart = false;
    if (use_tr) {
      auto [next_state, triggered] =
          update_tr(std::move(state), run.ys.back(), y_incumbent,
                    config.success_rel_threshold);
      state = std::move(next_state);
      restart = triggered;
    }

    if (restart) {
      record.rows.back().restart_flag = true;
      ++restart_count;
      run.xs.clear();
      run.ys.clear();
      if (n < config.budget) {
        if (!evaluate_init_design()) {
          record.valid = false;
          return record;
        }
      }
      if (run.xs.empty()) break;  // budget exhausted mid-restart
      refit(true);  // a restart always forces a full fit
      evals_since_fit = 0;
      continue;
    }

    if (n >= config.budget) break;
    if (evals_since_fit >= config.refit_every) {
      refit(true);
      evals_since_fit = 0;
    } else {
      refit(false);
    }
  }
  return record;
}

}  // namespace adascale
