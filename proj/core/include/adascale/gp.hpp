// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_GP_HPP
#define ADASCALE_GP_HPP

#include <Eigen/Dense>

#include "adascale/kernel.hpp"
#include "adascale/linalg.hpp"

namespace adascale {

// Gaussian-process surrogate: training data, kernel hyperparameters, and
// the cached Cholesky factor of K + sigma_eps^2 I together with
// alpha = (K + sigma_eps^2 I)^{-1} y. Immutable once constructed; refits
// produce new instances. An empty model (N = 0) serves the prior.
class GpModel {
 public:
  GpModel(Eigen::MatrixXd train_x, Eigen::VectorXd train_y,
          KernelParams params);

  // Prior-only model for a given input dimension.
  static GpModel prior(Eigen::Index dim, KernelParams params);

  Eigen::Index num_points() const { return train_x_.rows(); }
  Eigen::Index dim() const { return dim_; }
  const Eigen::MatrixXd& train_x() const { return train_x_; }
  const Eigen::VectorXd& train_y() const { return train_y_; }
  const KernelParams& params() const { return params_; }
  const CholFactor& chol() const { return chol_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }

  // Posterior mean and latent variance at each query row. Variance is
  // clamped into [0, sigma_f^2].
  void posterior(const Eigen::MatrixXd& query, Eigen::VectorXd& mean,
                 Eigen::VectorXd& variance) const;
  std::pair<double, double> posterior_one(const Eigen::VectorXd& x) const;

 private:
  GpModel() = default;

  Eigen::Index dim_ = 0;
  Eigen::MatrixXd train_x_;
  Eigen::VectorXd train_y_;
  KernelParams params_;
  CholFactor chol_;
  Eigen::VectorXd alpha_;
};

std::pair<Eigen::VectorXd, Eigen::VectorXd> posterior(
    const GpModel& model, const Eigen::MatrixXd& query);

// Log marginal likelihood of (X, y) under the kernel, with its gradient in
// log-parameter coordinates.
struct MllResult {
  double value = 0.0;
  Eigen::VectorXd grad_log_lengthscales;
  double grad_log_noise = 0.0;
  double grad_log_signal = 0.0;
};

MllResult log_marginal_likelihood(const KernelParams& params,
                                  const Eigen::MatrixXd& x,
                                  const Eigen::VectorXd& y);

// Value without the gradient; cheaper inside line searches.
double log_marginal_likelihood_value(const KernelParams& params,
                                     const Eigen::MatrixXd& x,
                                     const Eigen::VectorXd& y);

}  // namespace adascale

#endif  // ADASCALE_GP_HPP
