// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_KERNEL_HPP
#define ADASCALE_KERNEL_HPP

#include <Eigen/Dense>

#include "adascale/errors.hpp"

namespace adascale {

// Hyperparameters of the ARD Matern-5/2 surrogate kernel.
struct KernelParams {
  Eigen::VectorXd lengthscales;   // one per input dimension, > 0
  double signal_variance = 1.0;   // sigma_f^2
  double noise_variance = 1e-6;   // sigma_eps^2, floored at 1e-6

  static KernelParams isotropic(Eigen::Index dim, double lengthscale,
                                double signal_variance = 1.0,
                                double noise_variance = 1e-6);
  void validate() const;
};

// ARD Matern-5/2 covariance between two points:
//   k(x, x') = sigma_f^2 (1 + sqrt(5) r + 5 r^2 / 3) exp(-sqrt(5) r),
//   r^2 = sum_j (x_j - x'_j)^2 / l_j^2.
double matern52_ard(const Eigen::VectorXd& x, const Eigen::VectorXd& x2,
                    const KernelParams& params);

// Matrix of lengthscale-scaled pairwise distances r between rows of X
// (and rows of X2 for the rectangular overload). Differences are formed
// before squaring so duplicate rows give exactly zero.
Eigen::MatrixXd scaled_distances(const Eigen::MatrixXd& x,
                                 const KernelParams& params);
Eigen::MatrixXd scaled_distances(const Eigen::MatrixXd& x,
                                 const Eigen::MatrixXd& x2,
                                 const KernelParams& params);

// Kernel applied elementwise to a distance matrix.
Eigen::MatrixXd matern52_of_distances(const Eigen::MatrixXd& r,
                                      double signal_variance);

// N x N Gram matrix of the kernel over the rows of X (no noise term).
Eigen::MatrixXd gram(const Eigen::MatrixXd& x, const KernelParams& params);

// Rectangular cross-covariance between rows of X and rows of X2.
Eigen::MatrixXd cross_gram(const Eigen::MatrixXd& x, const Eigen::MatrixXd& x2,
                           const KernelParams& params);

}  // namespace adascale

#endif  // ADASCALE_KERNEL_HPP
