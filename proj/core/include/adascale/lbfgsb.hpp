// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_LBFGSB_HPP
#define ADASCALE_LBFGSB_HPP

#include <functional>

#include <Eigen/Dense>

#include "adascale/linalg.hpp"

namespace adascale {

// Smooth objective. Returns f(x); when grad is non-null, writes df/dx into
// it (same dimension as x).
using GradObjective =
    std::function<double(const Eigen::VectorXd&, Eigen::VectorXd*)>;

// Value-only objective; the minimizer falls back to central finite
// differences for the gradient.
using ValueObjective = std::function<double(const Eigen::VectorXd&)>;

struct MinimizeOptions {
  int max_iter = 200;
  double tol = 1e-6;      // infinity norm of the projected gradient
  int memory = 10;        // L-BFGS history length
  double fd_step = 1e-6;  // fallback central-difference step is fd_step*(1+|x_i|)
};

struct MinimizeResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Limited-memory quasi-Newton minimization over a box, with
// gradient-projection handling of the active set and a backtracking Armijo
// search along the projected path. The returned point is always inside the
// bounds and its value never exceeds f(x0).
//
// Throws NonFiniteObjective when f evaluates to NaN or infinity at any
// queried point (including finite-difference probes).
MinimizeResult bounded_minimize(const GradObjective& f, const BoxBounds& bounds,
                                const Eigen::VectorXd& x0,
                                const MinimizeOptions& options = {});

MinimizeResult bounded_minimize(const ValueObjective& f, const BoxBounds& bounds,
                                const Eigen::VectorXd& x0,
                                const MinimizeOptions& options = {});

}  // namespace adascale

#endif  // ADASCALE_LBFGSB_HPP
