// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_ACQUISITION_HPP
#define ADASCALE_ACQUISITION_HPP

#include <cstdint>

#include <Eigen/Dense>

#include "adascale/gp.hpp"
#include "adascale/linalg.hpp"

namespace adascale {

struct AcqOptConfig {
  int n_raw = 20;    // Sobol candidates scored before refinement
  int n_starts = 5;  // candidates refined with the local minimizer
  int max_iter = 20;
  double tol = 1e-6;
};

// log EI under the minimization convention, z = (best - mean) / std:
//
//   log_ei = log(std) + log(phi(z) + z Phi(z)),
//
// with a Mills-ratio expansion for z < -6 so the value stays finite far
// into the no-improvement tail instead of underflowing. For std == 0 the
// improvement is deterministic: log(best - mean) if positive, else -inf.
double log_ei(double mean, double std, double best);

// Maximizes log EI of the model posterior over the box: scores n_raw
// scrambled Sobol candidates, refines the best n_starts with the bounded
// quasi-Newton minimizer (batched central-difference gradients), and
// returns the best point seen. Falls back to the best raw candidate if
// every refinement fails. Deterministic given (model, box, config, seed).
Eigen::VectorXd optimize_acq(const GpModel& model, double best,
                             const BoxBounds& box, const AcqOptConfig& config,
                             std::uint64_t seed);

}  // namespace adascale

#endif  // ADASCALE_ACQUISITION_HPP
