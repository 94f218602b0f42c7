// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_TRUST_REGION_HPP
#define ADASCALE_TRUST_REGION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "adascale/acquisition.hpp"
#include "adascale/hyperfit.hpp"
#include "adascale/linalg.hpp"

namespace adascale {

// State of a single trust region: the incumbent-centered hypercube of side
// length L, adapted by consecutive success/failure counts. At most one of
// the two counters is nonzero.
struct TrustRegionState {
  Eigen::VectorXd center;
  double side_length = 0.8;
  int succ_count = 0;
  int fail_count = 0;
  int tau_succ = 3;
  int tau_fail = 1;
  double l_init = 0.8;
  double l_min = 0.0078125;  // 0.5^7
  double l_max = 1.6;
};

// ceil(max(4/q, D/q)) for batch size q.
int failure_tolerance(int dim, int batch_size);

// The trust-region hypercube [center - L/2, center + L/2] clipped to the
// domain.
BoxBounds tr_box(const TrustRegionState& state, const BoxBounds& domain);

// One counter update after a batch: success when the batch minimum improves
// the incumbent (optionally by a relative margin). succ_count reaching
// tau_succ doubles L (capped at l_max); fail_count reaching tau_fail halves
// it. Returns the new state and whether L fell below l_min, which resets
// the state to l_init and signals a restart.
std::pair<TrustRegionState, bool> update_tr(TrustRegionState state,
                                            double y_batch_min,
                                            double y_incumbent,
                                            double rel_threshold = 0.0);

// The four optimizer variants. AdaScaleTurbo pairs the trust region with
// the TR-aware lengthscale prior and MAP fitting; TurboMle is the plain
// box-constrained MLE baseline; DScaledTurbo swaps in the
// dimension-only-scaled prior; DScaledGlobal drops the trust region
// entirely and runs global MAP BO with the dimension-scaled prior.
enum class Variant { AdaScaleTurbo, TurboMle, DScaledTurbo, DScaledGlobal };

std::string variant_name(Variant variant);
Variant variant_from_name(const std::string& name);
PriorKind variant_prior_kind(Variant variant);
FitMode variant_fit_mode(Variant variant);
bool variant_uses_trust_region(Variant variant);

// One evaluation of a run trace.
struct EvalRow {
  int index = 0;
  Eigen::VectorXd x;
  double y = 0.0;
  double best_so_far = 0.0;
  double side_length_at_proposal = 0.0;
  // Set on the evaluation whose trust-region update dropped L below l_min;
  // the following rows are the fresh initialization design.
  bool restart_flag = false;
};

struct RunRecord {
  std::uint64_t seed = 0;
  Variant variant = Variant::AdaScaleTurbo;
  std::vector<EvalRow> rows;
  bool valid = true;  // false when the objective failed mid-run
};

// Notification emitted at every (re)fit of the GP hyperparameters.
struct FitEvent {
  int eval_count = 0;          // total evaluations so far
  double side_length = 0.0;    // L in effect for this fit
  LengthscalePrior prior;      // prior actually used
  KernelParams fitted;         // resulting hyperparameters
};

struct RunConfig {
  int dim = 0;
  int budget = 0;             // total evaluations, initialization included
  int n_init = 10;
  int refit_every = 10;       // full refits; caches update every iteration
  int batch_size = 1;         // enters the failure tolerance only
  double l_init = 0.8;
  double success_rel_threshold = 0.0;
  AcqOptConfig acq;
  FitConfig fit;              // mode/prior are overridden per variant
  std::function<void(const FitEvent&)> on_fit;  // optional instrumentation
};

using BlackBox = std::function<double(const Eigen::VectorXd&)>;

// Runs one seeded optimization of the objective over [0,1]^dim and returns
// the complete evaluation trace. The initialization design depends only on
// (seed, dim, n_init), so different variants at the same seed share it.
// Identical inputs give a bit-identical record.
RunRecord run_optimizer(const BlackBox& objective, Variant variant,
                        const RunConfig& config, std::uint64_t seed);

}  // namespace adascale

#endif  // ADASCALE_TRUST_REGION_HPP
