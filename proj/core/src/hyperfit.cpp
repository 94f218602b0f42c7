// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#include "adascale/hyperfit.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "adascale/errors.hpp"
#include "adascale/lbfgsb.hpp"
#include "adascale/rng.hpp"

namespace adascale {
namespace {

constexpr double kMu0 = 1.41421356237309504880;     // sqrt(2)
constexpr double kSigma0 = 1.73205080756887729353;  // sqrt(3)
constexpr double kHalfLog2Pi = 0.91893853320467274178;

// log density of LogNormal(mu, sigma) at exp(theta), as a function of the
// log-coordinate theta, and its derivative d/dtheta.
double lognormal_logpdf_log(double theta, double mu, double sigma) {
  const double z = (theta - mu) / sigma;
  return -theta - std::log(sigma) - kHalfLog2Pi - 0.5 * z * z;
}

double lognormal_dlogpdf_dlog(double theta, double mu, double sigma) {
  return -1.0 - (theta - mu) / (sigma * sigma);
}

// MAP parameter vector layout: (log l_1 .. log l_D, log noise).
KernelParams map_params_from(const Eigen::VectorXd& theta,
                             double signal_variance) {
  KernelParams params;
  const Eigen::Index dim = theta.size() - 1;
  params.lengthscales = theta.head(dim).array().exp();
  params.noise_variance = std::max(std::exp(theta[dim]), 1e-6);
  params.signal_variance = signal_variance;
  return params;
}

// MLE parameter vector layout: (log l_1 .. log l_D, log noise, log signal).
KernelParams mle_params_from(const Eigen::VectorXd& theta) {
  KernelParams params;
  const Eigen::Index dim = theta.size() - 2;
  params.lengthscales = theta.head(dim).array().exp();
  params.noise_variance = std::max(std::exp(theta[dim]), 1e-6);
  params.signal_variance = std::exp(theta[dim + 1]);
  return params;
}

// Scalar prior contribution of the negative MAP objective.
double neg_log_priors(const KernelParams& params, const LengthscalePrior& prior,
                      const NoisePrior& noise_prior) {
  double value = 0.0;
  if (prior.kind != PriorKind::None) {
    for (Eigen::Index j = 0; j < params.lengthscales.size(); ++j) {
      value -= lognormal_logpdf_log(std::log(params.lengthscales[j]),
                                    prior.mu[j], prior.sigma[j]);
    }
  }
  value -= lognormal_logpdf_log(std::log(params.noise_variance),
                                noise_prior.log_location, noise_prior.scale);
  return value;
}

}  // namespace

Eigen::VectorXd LengthscalePrior::mode() const {
  return (mu.array() - sigma.array().square()).exp();
}

LengthscalePrior make_prior(PriorKind kind, int dim, double tr_side_length) {
  if (dim < 1) {
    throw Error("make_prior: dimension must be >= 1");
  }
  LengthscalePrior prior;
  prior.kind = kind;
  if (kind == PriorKind::None) {
    return prior;
  }
  if (kind == PriorKind::AdaScale && !(tr_side_length > 0.0)) {
    throw InvalidTrustRegion(
        "make_prior: trust-region side length must be positive");
  }
  const double sqrt_d = std::sqrt(static_cast<double>(dim));
  const double shift = kind == PriorKind::AdaScale
                           ? std::log(tr_side_length * sqrt_d)
                           : std::log(sqrt_d);
  prior.mu = Eigen::VectorXd::Constant(dim, kMu0 + shift);
  prior.sigma = Eigen::VectorXd::Constant(dim, kSigma0);
  return prior;
}

MapObjectiveResult neg_map_objective(const KernelParams& params,
                                     const Eigen::MatrixXd& x,
                                     const Eigen::VectorXd& y,
                                     const LengthscalePrior& prior,
                                     const NoisePrior& noise_prior) {
  const Eigen::Index dim = params.lengthscales.size();
  MapObjectiveResult out;
  out.grad = Eigen::VectorXd::Zero(dim + 1);

  if (x.rows() > 0) {
    const MllResult mll = log_marginal_likelihood(params, x, y);
    out.value = -mll.value;
    out.grad.head(dim) = -mll.grad_log_lengthscales;
    out.grad[dim] = -mll.grad_log_noise;
  }

  if (prior.kind != PriorKind::None) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double theta = std::log(params.lengthscales[j]);
      out.value -= lognormal_logpdf_log(theta, prior.mu[j], prior.sigma[j]);
      out.grad[j] -= lognormal_dlogpdf_dlog(theta, prior.mu[j], prior.sigma[j]);
    }
  }

  const double log_noise = std::log(params.noise_variance);
  out.value -= lognormal_logpdf_log(log_noise, noise_prior.log_location,
                                    noise_prior.scale);
  out.grad[dim] -= lognormal_dlogpdf_dlog(log_noise, noise_prior.log_location,
                                          noise_prior.scale);
  return out;
}

KernelParams fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                 const FitConfig& config, const LengthscalePrior& prior,
                 std::uint64_t seed,
                 const std::optional<KernelParams>& warm_start) {
  const Eigen::Index n = x.rows();
  const Eigen::Index dim = x.cols();
  if (n < 1) {
    throw Error("fit: need at least one observation");
  }
  if (config.n_restarts < 1) {
    throw Error("fit: n_restarts must be >= 1");
  }
  const bool map_mode = config.mode == FitMode::Map;

  // Optimization variables live in log space; MAP adds the priors, MLE also
  // fits the signal variance inside its box.
  const Eigen::Index n_vars = map_mode ? dim + 1 : dim + 2;

  BoxBounds box;
  if (map_mode) {
    // Effectively unconstrained positive lengthscales; the prior does the
    // regularizing. Noise keeps its 1e-6 floor.
    Eigen::VectorXd lo = Eigen::VectorXd::Constant(n_vars, std::log(1e-6));
    Eigen::VectorXd hi = Eigen::VectorXd::Constant(n_vars, std::log(1e6));
    lo[dim] = std::log(1e-6);
    hi[dim] = std::log(10.0);
    box = BoxBounds(std::move(lo), std::move(hi));
  } else {
    Eigen::VectorXd lo(n_vars), hi(n_vars);
    lo.head(dim).setConstant(std::log(config.mle_lengthscale_lower));
    hi.head(dim).setConstant(std::log(config.mle_lengthscale_upper));
    lo[dim] = std::log(config.mle_noise_lower);
    hi[dim] = std::log(config.mle_noise_upper);
    lo[dim + 1] = std::log(config.mle_signal_lower);
    hi[dim + 1] = std::log(config.mle_signal_upper);
    box = BoxBounds(std::move(lo), std::move(hi));
  }

  GradObjective objective = [&](const Eigen::VectorXd& theta,
                                Eigen::VectorXd* grad) -> double {
    if (map_mode) {
      const KernelParams params = map_params_from(theta, 1.0);
      if (grad == nullptr) {
        // Value-only path (line search): skip the gradient machinery.
        return -log_marginal_likelihood_value(params, x, y) +
               neg_log_priors(params, prior, config.noise_prior);
      }
      const MapObjectiveResult res =
          neg_map_objective(params, x, y, prior, config.noise_prior);
      *grad = res.grad;
      return res.value;
    }
    const KernelParams params = mle_params_from(theta);
    if (grad == nullptr) {
      return -log_marginal_likelihood_value(params, x, y);
    }
    const MllResult mll = log_marginal_likelihood(params, x, y);
    grad->resize(n_vars);
    grad->head(dim) = -mll.grad_log_lengthscales;
    (*grad)[dim] = -mll.grad_log_noise;
    (*grad)[dim + 1] = -mll.grad_log_signal;
    return -mll.value;
  };

  // Assemble the start list: optional warm start, the canonical start
  // (prior mode / box midpoint), then seeded random draws.
  std::vector<Eigen::VectorXd> starts;
  starts.reserve(config.n_restarts);
  if (warm_start.has_value()) {
    Eigen::VectorXd theta(n_vars);
    theta.head(dim) = warm_start->lengthscales.array().log();
    theta[dim] = std::log(warm_start->noise_variance);
    if (!map_mode) theta[dim + 1] = std::log(warm_start->signal_variance);
    starts.push_back(box.clip(theta));
  }
  if (static_cast<int>(starts.size()) < config.n_restarts) {
    Eigen::VectorXd theta(n_vars);
    if (map_mode) {
      if (prior.kind == PriorKind::None) {
        theta.head(dim).setZero();
      } else {
        theta.head(dim) = prior.mu - prior.sigma.cwiseProduct(prior.sigma);
      }
      theta[dim] = config.noise_prior.log_location -
                   config.noise_prior.scale * config.noise_prior.scale;
    } else {
      theta = (box.lower + box.upper) / 2.0;
    }
    starts.push_back(box.clip(theta));
  }
  std::mt19937_64 gen(seed);
  while (static_cast<int>(starts.size()) < config.n_restarts) {
    Eigen::VectorXd theta(n_vars);
    if (map_mode) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        const double mu = prior.kind == PriorKind::None ? 0.0 : prior.mu[j];
        const double sd =
            prior.kind == PriorKind::None ? 1.0 : prior.sigma[j];
        theta[j] = mu + sd * standard_normal(gen);
      }
      theta[dim] = config.noise_prior.log_location +
                   config.noise_prior.scale * standard_normal(gen);
    } else {
      for (Eigen::Index j = 0; j < n_vars; ++j) {
        theta[j] =
            box.lower[j] + (box.upper[j] - box.lower[j]) * uniform01(gen);
      }
    }
    starts.push_back(box.clip(theta));
  }

  MinimizeOptions options;
  options.max_iter = config.max_iter;
  options.tol = config.tol;

  bool any_success = false;
  double best_value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_theta;
  for (const Eigen::VectorXd& start : starts) {
    try {
      const MinimizeResult res = bounded_minimize(objective, box, start, options);
      if (!any_success || res.value < best_value) {
        any_success = true;
        best_value = res.value;
        best_theta = res.x;
      }
    } catch (const NotPositiveDefinite&) {
      continue;
    } catch (const NonFiniteObjective&) {
      continue;
    }
  }
  if (!any_success) {
    throw FitFailed("fit: every restart failed");
  }
  return map_mode ? map_params_from(best_theta, 1.0)
                  : mle_params_from(best_theta);
}

}  // namespace adascale
