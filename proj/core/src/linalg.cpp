// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#include "adascale/linalg.hpp"

#include <cmath>
#include <sstream>

namespace adascale {

BoxBounds::BoxBounds(Eigen::VectorXd lo, Eigen::VectorXd hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.size() != upper.size()) {
    throw Error("BoxBounds: lower and upper dimensions differ");
  }
  if (!lower.allFinite() || !upper.allFinite()) {
    throw Error("BoxBounds: bounds must be finite");
  }
  if ((lower.array() > upper.array()).any()) {
    throw Error("BoxBounds: lower > upper in some coordinate");
  }
}

BoxBounds BoxBounds::unit_cube(Eigen::Index dim) {
  return BoxBounds(Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Ones(dim));
}

bool BoxBounds::contains(const Eigen::VectorXd& x, double tol) const {
  return (x.array() >= lower.array() - tol).all() &&
         (x.array() <= upper.array() + tol).all();
}

Eigen::VectorXd BoxBounds::clip(const Eigen::VectorXd& x) const {
  return x.cwiseMax(lower).cwiseMin(upper);
}

Eigen::VectorXd CholFactor::solve(const Eigen::VectorXd& b) const {
  Eigen::VectorXd x = lower.triangularView<Eigen::Lower>().solve(b);
  lower.triangularView<Eigen::Lower>().transpose().solveInPlace(x);
  return x;
}

Eigen::MatrixXd CholFactor::solve(const Eigen::MatrixXd& b) const {
  Eigen::MatrixXd x = lower.triangularView<Eigen::Lower>().solve(b);
  lower.triangularView<Eigen::Lower>().transpose().solveInPlace(x);
  return x;
}

Eigen::MatrixXd CholFactor::solve_lower(const Eigen::MatrixXd& b) const {
  return lower.triangularView<Eigen::Lower>().solve(b);
}

CholFactor cholesky_logdet(const Eigen::MatrixXd& a, double base_jitter) {
  if (a.rows() != a.cols()) {
    throw Error("cholesky_logdet: matrix is not square");
  }
  if (base_jitter < 0.0) {
    throw Error("cholesky_logdet: base_jitter must be nonnegative");
  }
  constexpr double kMaxJitter = 1e-2;
  constexpr double kEscalationStart = 1e-6;

  double jitter = base_jitter;
  for (;;) {
    Eigen::MatrixXd m = a;
    if (jitter > 0.0) m.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() == Eigen::Success) {
      CholFactor factor;
      factor.lower = llt.matrixL();
      factor.log_det = 2.0 * factor.lower.diagonal().array().log().sum();
      factor.jitter_used = jitter;
      return factor;
    }
    const double next =
        jitter <= 0.0 ? kEscalationStart
                      : std::max(jitter * 10.0, kEscalationStart);
    if (next > kMaxJitter * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "cholesky_logdet: matrix of size " << a.rows()
          << " not positive definite after jitter escalation to " << jitter;
      throw NotPositiveDefinite(msg.str());
    }
    jitter = next;
  }
}

}  // namespace adascale
