// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_PRIOR_SAMPLE_HPP
#define ADASCALE_PRIOR_SAMPLE_HPP

#include <cstdint>

#include <Eigen/Dense>

namespace adascale {

// A draw from an isotropic Matern-5/2 GP prior on [0,1]^D, represented by
// a random-feature expansion:
//
//   f(x) = sqrt(2/M) sum_m w_m cos(omega_m . x + b_m),
//
// with frequencies omega_m from the Matern-5/2 spectral density
// (multivariate-t with 5 degrees of freedom, scale 1/lengthscale), phases
// b_m uniform on [0, 2pi), and weights w_m standard normal. Evaluation is
// deterministic and costs O(M D).
struct PriorSampleObjective {
  Eigen::MatrixXd feature_weights;  // M x D frequency matrix
  Eigen::VectorXd feature_phases;   // M
  Eigen::VectorXd output_weights;   // M
  double lengthscale = 1.0;

  double operator()(const Eigen::VectorXd& x) const;
};

PriorSampleObjective sample_prior_objective(int dim, double lengthscale,
                                            int n_features,
                                            std::uint64_t seed);

}  // namespace adascale

#endif  // ADASCALE_PRIOR_SAMPLE_HPP
