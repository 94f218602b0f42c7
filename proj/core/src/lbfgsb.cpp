// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#include "adascale/lbfgsb.hpp"

#include <cmath>
#include <deque>

#include "adascale/errors.hpp"

namespace adascale {
namespace {

constexpr double kArmijoSlope = 1e-4;
constexpr int kMaxBacktracks = 40;

double checked_eval(const GradObjective& f, const Eigen::VectorXd& x,
                    Eigen::VectorXd* grad) {
  const double value = f(x, grad);
  if (!std::isfinite(value) || (grad != nullptr && !grad->allFinite())) {
    throw NonFiniteObjective(
        "bounded_minimize: objective returned a non-finite value");
  }
  return value;
}

struct CurvaturePair {
  Eigen::VectorXd s;
  Eigen::VectorXd y;
  double rho;  // 1 / (s.y)
};

// Standard two-loop recursion, gradient restricted to the free subspace.
Eigen::VectorXd two_loop_direction(const std::deque<CurvaturePair>& pairs,
                                   const Eigen::VectorXd& grad_free) {
  Eigen::VectorXd q = grad_free;
  std::vector<double> alpha(pairs.size());
  for (std::size_t i = pairs.size(); i-- > 0;) {
    alpha[i] = pairs[i].rho * pairs[i].s.dot(q);
    q -= alpha[i] * pairs[i].y;
  }
  if (!pairs.empty()) {
    const CurvaturePair& last = pairs.back();
    q *= last.s.dot(last.y) / last.y.squaredNorm();
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double beta = pairs[i].rho * pairs[i].y.dot(q);
    q += (alpha[i] - beta) * pairs[i].s;
  }
  return -q;
}

}  // namespace

MinimizeResult bounded_minimize(const GradObjective& f, const BoxBounds& bounds,
                                const Eigen::VectorXd& x0,
                                const MinimizeOptions& options) {
  const Eigen::Index dim = bounds.dim();
  if (x0.size() != dim) {
    throw Error("bounded_minimize: x0 dimension mismatch");
  }
  if (options.tol <= 0.0) {
    throw Error("bounded_minimize: tol must be positive");
  }

  MinimizeResult result;
  Eigen::VectorXd x = bounds.clip(x0);
  Eigen::VectorXd grad(dim);
  double value = checked_eval(f, x, &grad);

  std::deque<CurvaturePair> pairs;
  Eigen::VectorXd grad_free(dim), direction(dim), trial(dim),
      trial_grad(dim);

  int iter = 0;
  for (; iter < options.max_iter; ++iter) {
    const Eigen::VectorXd projected = x - bounds.clip(x - grad);
    if (projected.lpNorm<Eigen::Infinity>() <= options.tol) {
      result.converged = true;
      break;
    }

    // Freeze coordinates that sit on a bound with the gradient pointing
    // outward; the quasi-Newton step acts on the complement.
    grad_free = grad;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double span = 1e-10 * (1.0 + std::abs(x[i]));
      const bool at_lower = x[i] <= bounds.lower[i] + span && grad[i] > 0.0;
      const bool at_upper = x[i] >= bounds.upper[i] - span && grad[i] < 0.0;
      if (at_lower || at_upper) grad_free[i] = 0.0;
    }

    direction = two_loop_direction(pairs, grad_free);
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (grad_free[i] == 0.0) direction[i] = 0.0;
    }
    double slope = grad.dot(direction);
    if (!(slope < 0.0)) {
      // Not a descent direction (degenerate curvature); fall back to
      // projected steepest descent with a bounded first step.
      direction = -grad_free;
      const double norm = direction.norm();
      if (norm > 1.0) direction /= norm;
      slope = grad.dot(direction);
      if (!(slope < 0.0)) break;  // fully constrained
    }

    double step = 1.0;
    bool accepted = false;
    double trial_value = value;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      trial = bounds.clip(x + step * direction);
      const Eigen::VectorXd delta = trial - x;
      const double delta_slope = grad.dot(delta);
      if (delta_slope < 0.0) {
        trial_value = checked_eval(f, trial, nullptr);
        if (trial_value <= value + kArmijoSlope * delta_slope) {
          accepted = true;
          break;
        }
      } else if (delta.isZero(0.0)) {
        break;  // projection collapsed the step entirely
      }
      step *= 0.5;
    }
    if (!accepted) break;

    trial_value = checked_eval(f, trial, &trial_grad);
    const Eigen::VectorXd s = trial - x;
    const Eigen::VectorXd y = trial_grad - grad;
    const double sy = s.dot(y);
    if (sy > 1e-10 * s.norm() * y.norm()) {
      pairs.push_back({s, y, 1.0 / sy});
      if (static_cast<int>(pairs.size()) > options.memory) {
        pairs.pop_front();
      }
    }
    x = trial;
    value = trial_value;
    grad = trial_grad;
  }

  result.x = std::move(x);
  result.value = value;
  result.iterations = iter;
  return result;
}

MinimizeResult bounded_minimize(const ValueObjective& f, const BoxBounds& bounds,
                                const Eigen::VectorXd& x0,
                                const MinimizeOptions& options) {
  const double fd_step = options.fd_step;
  GradObjective wrapped = [&f, fd_step](const Eigen::VectorXd& x,
                                        Eigen::VectorXd* grad) {
    if (grad != nullptr) {
      Eigen::VectorXd probe = x;
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = fd_step * (1.0 + std::abs(x[i]));
        probe[i] = x[i] + h;
        const double fp = f(probe);
        probe[i] = x[i] - h;
        const double fm = f(probe);
        probe[i] = x[i];
        (*grad)[i] = (fp - fm) / (2.0 * h);
      }
    }
    return f(x);
  };
  return bounded_minimize(wrapped, bounds, x0, options);
}

}  // namespace adascale
