// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#include "adascale/kernel.hpp"

#include <cmath>

namespace adascale {
namespace {

constexpr double kSqrt5 = 2.23606797749978969641;

}  // namespace

KernelParams KernelParams::isotropic(Eigen::Index dim, double lengthscale,
                                     double signal_variance,
                                     double noise_variance) {
  KernelParams params;
  params.lengthscales = Eigen::VectorXd::Constant(dim, lengthscale);
  params.signal_variance = signal_variance;
  params.noise_variance = noise_variance;
  params.validate();
  return params;
}

void KernelParams::validate() const {
  if (lengthscales.size() == 0) {
    throw Error("KernelParams: empty lengthscales");
  }
  if (!lengthscales.allFinite() || (lengthscales.array() <= 0.0).any()) {
    throw Error("KernelParams: lengthscales must be positive and finite");
  }
  if (!(signal_variance >= 0.0) || !std::isfinite(signal_variance)) {
    throw Error("KernelParams: signal_variance must be nonnegative");
  }
  if (!(noise_variance >= 1e-6) || !std::isfinite(noise_variance)) {
    throw Error("KernelParams: noise_variance must be >= 1e-6");
  }
}

double matern52_ard(const Eigen::VectorXd& x, const Eigen::VectorXd& x2,
                    const KernelParams& params) {
  const double r =
      ((x - x2).array() / params.lengthscales.array()).matrix().norm();
  return params.signal_variance * (1.0 + kSqrt5 * r + 5.0 / 3.0 * r * r) *
         std::exp(-kSqrt5 * r);
}

Eigen::MatrixXd scaled_distances(const Eigen::MatrixXd& x,
                                 const KernelParams& params) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd scaled =
      x.array().rowwise() / params.lengthscales.transpose().array();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // Difference-first evaluation for the strict lower triangle.
    auto block = scaled.bottomRows(n - i - 1);
    r.col(i).tail(n - i - 1) =
        (block.rowwise() - scaled.row(i)).rowwise().norm();
  }
  r.triangularView<Eigen::StrictlyUpper>() = r.transpose();
  return r;
}

Eigen::MatrixXd scaled_distances(const Eigen::MatrixXd& x,
                                 const Eigen::MatrixXd& x2,
                                 const KernelParams& params) {
  Eigen::MatrixXd sx =
      x.array().rowwise() / params.lengthscales.transpose().array();
  Eigen::MatrixXd sx2 =
      x2.array().rowwise() / params.lengthscales.transpose().array();
  Eigen::MatrixXd r(sx.rows(), sx2.rows());
  for (Eigen::Index j = 0; j < sx2.rows(); ++j) {
    r.col(j) = (sx.rowwise() - sx2.row(j)).rowwise().norm();
  }
  return r;
}

Eigen::MatrixXd matern52_of_distances(const Eigen::MatrixXd& r,
                                      double signal_variance) {
  return signal_variance *
         ((1.0 + kSqrt5 * r.array() + 5.0 / 3.0 * r.array().square()) *
          (-kSqrt5 * r.array()).exp())
             .matrix();
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& x, const KernelParams& params) {
  Eigen::MatrixXd k =
      matern52_of_distances(scaled_distances(x, params),
                            params.signal_variance);
  k.diagonal().setConstant(params.signal_variance);
  return k;
}

Eigen::MatrixXd cross_gram(const Eigen::MatrixXd& x, const Eigen::MatrixXd& x2,
                           const KernelParams& params) {
  return matern52_of_distances(scaled_distances(x, x2, params),
                               params.signal_variance);
}

}  // namespace adascale
