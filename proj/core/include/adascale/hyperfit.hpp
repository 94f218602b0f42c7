// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_HYPERFIT_HPP
#define ADASCALE_HYPERFIT_HPP

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "adascale/gp.hpp"
#include "adascale/kernel.hpp"

namespace adascale {

enum class PriorKind { AdaScale, DScaled, None };

// Per-dimension LogNormal prior on the lengthscales.
//
// The AdaScale form shifts the base location mu_0 = sqrt(2) by
// log(L sqrt(D)), tying the prior mode to both the dimension and the
// current trust-region side length; the D-scaled form shifts by
// log(sqrt(D)) only. Scale is sigma_0 = sqrt(3) throughout.
struct LengthscalePrior {
  PriorKind kind = PriorKind::None;
  Eigen::VectorXd mu;     // log-lengthscale locations
  Eigen::VectorXd sigma;  // log-lengthscale scales, > 0

  // Componentwise mode exp(mu - sigma^2); the natural fitting start.
  Eigen::VectorXd mode() const;
};

LengthscalePrior make_prior(PriorKind kind, int dim,
                            double tr_side_length = 1.0);

// LogNormal prior on the noise variance.
struct NoisePrior {
  double log_location = -6.90775527898213705205;  // log(1e-3)
  double scale = 1.0;

  double mode() const { return std::exp(log_location - scale * scale); }
};

enum class FitMode { Mle, Map };

struct FitConfig {
  FitMode mode = FitMode::Map;

  // MLE box constraints (mirroring the reference trust-region setup).
  double mle_lengthscale_lower = 0.005;
  double mle_lengthscale_upper = 4.0;
  double mle_signal_lower = 0.05;
  double mle_signal_upper = 20.0;
  double mle_noise_lower = 1e-6;
  double mle_noise_upper = 1e-2;

  NoisePrior noise_prior;
  bool fix_signal_variance = true;  // MAP fixes sigma_f^2 = 1
  int n_restarts = 4;               // total starts, including the seeded one
  int max_iter = 100;
  double tol = 1e-5;
};

struct MapObjectiveResult {
  double value = 0.0;
  // Gradient over (log l_1, ..., log l_D, log sigma_eps^2).
  Eigen::VectorXd grad;
};

// Negative MAP objective -MLL - log p(l) - log p(sigma_eps^2) with
// sigma_f^2 held at its value in params. A PriorKind::None lengthscale
// prior contributes nothing, making the value exactly -MLL. N = 0 data is
// allowed; the likelihood term then vanishes.
MapObjectiveResult neg_map_objective(const KernelParams& params,
                                     const Eigen::MatrixXd& x,
                                     const Eigen::VectorXd& y,
                                     const LengthscalePrior& prior,
                                     const NoisePrior& noise_prior);

// Multi-restart hyperparameter fit. The first start is the prior mode
// (MAP) or the log-space box midpoint (MLE); a warm start, when supplied,
// is prepended; remaining starts are seeded draws. The best restart by
// objective value wins, ties broken by restart order.
//
// Throws FitFailed when every restart raises NotPositiveDefinite.
KernelParams fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                 const FitConfig& config, const LengthscalePrior& prior,
                 std::uint64_t seed,
                 const std::optional<KernelParams>& warm_start = {});

}  // namespace adascale

#endif  // ADASCALE_HYPERFIT_HPP
