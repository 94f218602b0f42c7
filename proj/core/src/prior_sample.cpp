// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#include "adascale/prior_sample.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "adascale/errors.hpp"
#include "adascale/rng.hpp"

namespace adascale {

double PriorSampleObjective::operator()(const Eigen::VectorXd& x) const {
  const Eigen::Index m = output_weights.size();
  const Eigen::ArrayXd phase =
      (feature_weights * x + feature_phases).array();
  return std::sqrt(2.0 / static_cast<double>(m)) *
         (phase.cos() * output_weights.array()).sum();
}

PriorSampleObjective sample_prior_objective(int dim, double lengthscale,
                                            int n_features,
                                            std::uint64_t seed) {
  if (dim < 1 || n_features < 1) {
    throw Error("sample_prior_objective: dim and n_features must be >= 1");
  }
  if (!(lengthscale > 0.0)) {
    throw Error("sample_prior_objective: lengthscale must be positive");
  }
  std::mt19937_64 gen(seed);

  PriorSampleObjective obj;
  obj.lengthscale = lengthscale;
  obj.feature_weights.resize(n_features, dim);
  obj.feature_phases.resize(n_features);
  obj.output_weights.resize(n_features);

  // Matern-5/2 spectral frequencies: scaled Gaussian over sqrt of a
  // chi-squared with 5 degrees of freedom (multivariate-t draw).
  for (int m = 0; m < n_features; ++m) {
    for (int j = 0; j < dim; ++j) {
      obj.feature_weights(m, j) = standard_normal(gen);
    }
    const double u = chi_squared(gen, 5);
    obj.feature_weights.row(m) *= std::sqrt(5.0 / u) / lengthscale;
    obj.feature_phases[m] = 2.0 * std::numbers::pi * uniform01(gen);
    obj.output_weights[m] = standard_normal(gen);
  }
  return obj;
}

}  // namespace adascale
