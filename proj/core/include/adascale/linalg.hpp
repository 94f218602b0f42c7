// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_LINALG_HPP
#define ADASCALE_LINALG_HPP

#include <Eigen/Dense>

#include "adascale/errors.hpp"

namespace adascale {

// Axis-aligned box, lower <= upper componentwise, both finite.
struct BoxBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  BoxBounds() = default;
  BoxBounds(Eigen::VectorXd lo, Eigen::VectorXd hi);

  // Unit cube [0,1]^dim.
  static BoxBounds unit_cube(Eigen::Index dim);

  Eigen::Index dim() const { return lower.size(); }
  bool contains(const Eigen::VectorXd& x, double tol = 0.0) const;
  Eigen::VectorXd clip(const Eigen::VectorXd& x) const;
};

// Cholesky factor of A + jitter * I.
//
// lower * lower^T reconstructs the (jittered) input; log_det is the log
// determinant of the jittered matrix, 2 * sum(log(diag(lower))).
struct CholFactor {
  Eigen::MatrixXd lower;
  double log_det = 0.0;
  double jitter_used = 0.0;

  Eigen::Index size() const { return lower.rows(); }

  // Solves (L L^T) x = b.
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;
  // Solves L x = b (forward substitution only).
  Eigen::MatrixXd solve_lower(const Eigen::MatrixXd& b) const;
};

// Factors A + j*I where j is the first value in {base_jitter, then decades
// from max(1e-6, 10*base_jitter) up to 1e-2} for which the factorization
// succeeds. Throws NotPositiveDefinite once escalation is exhausted, which
// signals a genuinely degenerate matrix.
CholFactor cholesky_logdet(const Eigen::MatrixXd& a, double base_jitter);

}  // namespace adascale

#endif  // ADASCALE_LINALG_HPP
