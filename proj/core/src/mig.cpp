// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#include "adascale/mig.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "adascale/errors.hpp"
#include "adascale/kernel.hpp"
#include "adascale/rng.hpp"
#include "adascale/sobol.hpp"

namespace adascale {

double information_gain(const Eigen::MatrixXd& gram_matrix,
                        double noise_variance) {
  if (gram_matrix.rows() != gram_matrix.cols()) {
    throw Error("information_gain: Gram matrix must be square");
  }
  if (!(noise_variance > 0.0)) {
    throw Error("information_gain: noise_variance must be positive");
  }
  const Eigen::Index n = gram_matrix.rows();
  if (n == 0) return 0.0;
  Eigen::MatrixXd m = gram_matrix / noise_variance;
  m.diagonal().array() += 1.0;
  // No jitter: I + K/sigma^2 has eigenvalues >= 1 for PSD K, so a failure
  // here means the input was not a valid Gram matrix.
  return 0.5 * cholesky_logdet(m, 0.0).log_det;
}

double independent_ig(int n, double noise_variance) {
  if (n < 0) {
    throw Error("independent_ig: n must be nonnegative");
  }
  if (!(noise_variance > 0.0)) {
    throw Error("independent_ig: noise_variance must be positive");
  }
  return 0.5 * static_cast<double>(n) * std::log1p(1.0 / noise_variance);
}

MigCurve sobol_mig_curve(int dim, double side_length, double lengthscale,
                         double noise_variance,
                         const std::vector<int>& n_grid) {
  if (!(side_length > 0.0 && side_length <= 1.0)) {
    throw Error("sobol_mig_curve: side length must be in (0, 1]");
  }
  MigCurve curve;
  curve.dim = dim;
  curve.side_length = side_length;
  curve.lengthscale = lengthscale;
  curve.noise_variance = noise_variance;
  if (n_grid.empty()) return curve;

  const int n_max = *std::max_element(n_grid.begin(), n_grid.end());
  const Eigen::MatrixXd design =
      side_length * sobol_sequence(n_max, dim, 0, false);
  const KernelParams params = KernelParams::isotropic(dim, lengthscale);
  const Eigen::MatrixXd k_full = gram(design, params);

  curve.points.reserve(n_grid.size());
  for (int n : n_grid) {
    if (n < 0 || n > n_max) {
      throw Error("sobol_mig_curve: invalid design size in grid");
    }
    curve.points.emplace_back(
        n, information_gain(k_full.topLeftCorner(n, n), noise_variance));
  }
  return curve;
}

DistanceBounds expected_distance_bounds(int dim, double side_length) {
  if (dim < 1 || !(side_length > 0.0)) {
    throw Error("expected_distance_bounds: need dim >= 1 and L > 0");
  }
  const double d = static_cast<double>(dim);
  DistanceBounds bounds;
  bounds.lower = side_length / 3.0 * std::sqrt(d);
  bounds.upper = side_length / std::sqrt(6.0) * std::sqrt(d) *
                 std::sqrt((1.0 + 2.0 * std::sqrt(1.0 - 3.0 / (5.0 * d))) / 3.0);
  return bounds;
}

McEstimate mc_expected_distance(int dim, double side_length,
                                std::int64_t n_pairs, std::uint64_t seed) {
  if (dim < 1 || !(side_length > 0.0) || n_pairs < 2) {
    throw Error("mc_expected_distance: invalid arguments");
  }
  std::mt19937_64 gen(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t i = 0; i < n_pairs; ++i) {
    double dist_sq = 0.0;
    for (int j = 0; j < dim; ++j) {
      const double delta =
          side_length * (uniform01(gen) - uniform01(gen));
      dist_sq += delta * delta;
    }
    const double dist = std::sqrt(dist_sq);
    sum += dist;
    sum_sq += dist * dist;
  }
  const double n = static_cast<double>(n_pairs);
  McEstimate out;
  out.estimate = sum / n;
  const double var = (sum_sq - n * out.estimate * out.estimate) / (n - 1.0);
  out.std_error = std::sqrt(std::max(var, 0.0) / n);
  return out;
}

ScalingCheck verify_scaling_invariance(int dim, double side_length, int n,
                                       double c, std::uint64_t seed,
                                       double noise_variance) {
  if (!(side_length > 0.0 && side_length <= 1.0) || n < 2 || !(c > 0.0)) {
    throw Error("verify_scaling_invariance: invalid arguments");
  }
  const Eigen::MatrixXd design = sobol_sequence(n, dim, seed, true);
  const double sqrt_d = std::sqrt(static_cast<double>(dim));

  const KernelParams global_params =
      KernelParams::isotropic(dim, c * sqrt_d);
  const KernelParams local_params =
      KernelParams::isotropic(dim, (c * side_length) * sqrt_d);

  const Eigen::MatrixXd k_global = gram(design, global_params);
  const Eigen::MatrixXd scaled = side_length * design;
  const Eigen::MatrixXd k_local = gram(scaled, local_params);

  ScalingCheck check;
  check.max_gram_diff = (k_global - k_local).cwiseAbs().maxCoeff();
  check.ig_abs_diff = std::abs(information_gain(k_global, noise_variance) -
                               information_gain(k_local, noise_variance));
  return check;
}

}  // namespace adascale
