// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#include "adascale/gp.hpp"

#include <cmath>
#include <numbers>

namespace adascale {
namespace {

constexpr double kSqrt5 = 2.23606797749978969641;
constexpr double kLog2Pi = 1.83787706640934548356;

Eigen::MatrixXd noisy_gram(const Eigen::MatrixXd& x,
                           const KernelParams& params) {
  Eigen::MatrixXd k = gram(x, params);
  k.diagonal().array() += params.noise_variance;
  return k;
}

}  // namespace

GpModel::GpModel(Eigen::MatrixXd train_x, Eigen::VectorXd train_y,
                 KernelParams params) {
  params.validate();
  if (train_x.rows() != train_y.size()) {
    throw Error("GpModel: row count of train_x must match train_y");
  }
  if (train_x.cols() != params.lengthscales.size()) {
    throw Error("GpModel: train_x and lengthscale dimensions differ");
  }
  dim_ = train_x.cols();
  train_x_ = std::move(train_x);
  train_y_ = std::move(train_y);
  params_ = std::move(params);
  if (num_points() > 0) {
    chol_ = cholesky_logdet(noisy_gram(train_x_, params_), 0.0);
    alpha_ = chol_.solve(train_y_);
  }
}

GpModel GpModel::prior(Eigen::Index dim, KernelParams params) {
  params.validate();
  if (params.lengthscales.size() != dim) {
    throw Error("GpModel::prior: dimension mismatch");
  }
  GpModel model;
  model.dim_ = dim;
  model.train_x_ = Eigen::MatrixXd(0, dim);
  model.train_y_ = Eigen::VectorXd(0);
  model.params_ = std::move(params);
  return model;
}

void GpModel::posterior(const Eigen::MatrixXd& query, Eigen::VectorXd& mean,
                        Eigen::VectorXd& variance) const {
  const Eigen::Index q = query.rows();
  if (query.cols() != dim_) {
    throw Error("GpModel::posterior: query dimension mismatch");
  }
  if (num_points() == 0) {
    mean = Eigen::VectorXd::Zero(q);
    variance = Eigen::VectorXd::Constant(q, params_.signal_variance);
    return;
  }
  const Eigen::MatrixXd kq = cross_gram(train_x_, query, params_);  // N x Q
  mean = kq.transpose() * alpha_;
  const Eigen::MatrixXd v = chol_.solve_lower(kq);
  variance = (params_.signal_variance - v.colwise().squaredNorm().array())
                 .cwiseMax(0.0)
                 .matrix();
}

std::pair<double, double> GpModel::posterior_one(
    const Eigen::VectorXd& x) const {
  if (num_points() == 0) {
    return {0.0, params_.signal_variance};
  }
  Eigen::VectorXd kq(num_points());
  for (Eigen::Index i = 0; i < num_points(); ++i) {
    const double r = ((train_x_.row(i).transpose() - x).array() /
                      params_.lengthscales.array())
                         .matrix()
                         .norm();
    kq[i] = params_.signal_variance * (1.0 + kSqrt5 * r + 5.0 / 3.0 * r * r) *
            std::exp(-kSqrt5 * r);
  }
  const double mean = kq.dot(alpha_);
  const Eigen::VectorXd v = chol_.solve_lower(kq);
  const double variance =
      std::max(0.0, params_.signal_variance - v.squaredNorm());
  return {mean, variance};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> posterior(
    const GpModel& model, const Eigen::MatrixXd& query) {
  Eigen::VectorXd mean, variance;
  model.posterior(query, mean, variance);
  return {std::move(mean), std::move(variance)};
}

double log_marginal_likelihood_value(const KernelParams& params,
                                     const Eigen::MatrixXd& x,
                                     const Eigen::VectorXd& y) {
  params.validate();
  const Eigen::Index n = x.rows();
  if (n < 1) {
    throw Error("log_marginal_likelihood: need at least one observation");
  }
  const CholFactor chol = cholesky_logdet(noisy_gram(x, params), 0.0);
  const Eigen::VectorXd alpha = chol.solve(y);
  return -0.5 * y.dot(alpha) - 0.5 * chol.log_det -
         0.5 * static_cast<double>(n) * kLog2Pi;
}

MllResult log_marginal_likelihood(const KernelParams& params,
                                  const Eigen::MatrixXd& x,
                                  const Eigen::VectorXd& y) {
  params.validate();
  const Eigen::Index n = x.rows();
  if (n < 1) {
    throw Error("log_marginal_likelihood: need at least one observation");
  }
  if (y.size() != n) {
    throw Error("log_marginal_likelihood: x and y row counts differ");
  }

  const Eigen::MatrixXd r = scaled_distances(x, params);
  Eigen::MatrixXd k = matern52_of_distances(r, params.signal_variance);
  k.diagonal().setConstant(params.signal_variance);
  Eigen::MatrixXd k_noisy = k;
  k_noisy.diagonal().array() += params.noise_variance;

  const CholFactor chol = cholesky_logdet(k_noisy, 0.0);
  const Eigen::VectorXd alpha = chol.solve(y);

  MllResult out;
  out.value = -0.5 * y.dot(alpha) - 0.5 * chol.log_det -
              0.5 * static_cast<double>(n) * kLog2Pi;

  // Gradient: dMLL/dtheta = 0.5 tr((alpha alpha^T - K~^{-1}) dK~/dtheta).
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd k_inv = chol.solve(identity);
  const Eigen::MatrixXd a = alpha * alpha.transpose() - k_inv;

  out.grad_log_noise = 0.5 * params.noise_variance * a.trace();
  out.grad_log_signal = 0.5 * a.cwiseProduct(k).sum();

  // dk/dlog(l_j) = sigma_f^2 (5/3)(1 + sqrt(5) r) exp(-sqrt(5) r)
  //                * (x_j - x'_j)^2 / l_j^2; the pair sum reduces to two
  //                matrix products via
  //   sum_im W_im (x_ij - x_mj)^2 = 2 (sum_i (W 1)_i x_ij^2 - x_j^T W x_j).
  const Eigen::MatrixXd w =
      a.array() * params.signal_variance * (5.0 / 3.0) *
      (1.0 + kSqrt5 * r.array()) * (-kSqrt5 * r.array()).exp();
  const Eigen::VectorXd w_row_sums = w.rowwise().sum();
  const Eigen::VectorXd t1 =
      x.array().square().matrix().transpose() * w_row_sums;
  const Eigen::MatrixXd wx = w * x;
  const Eigen::VectorXd t2 = x.cwiseProduct(wx).colwise().sum().transpose();
  out.grad_log_lengthscales =
      (t1 - t2).array() / params.lengthscales.array().square();

  return out;
}

}  // namespace adascale
