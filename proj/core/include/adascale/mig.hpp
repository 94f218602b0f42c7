// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_MIG_HPP
#define ADASCALE_MIG_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "adascale/linalg.hpp"

namespace adascale {

// Information gain of a design with Gram matrix K under observation noise
// sigma_eps^2, in nats:  0.5 log |I + sigma_eps^{-2} K|.
double information_gain(const Eigen::MatrixXd& gram_matrix,
                        double noise_variance);

// Closed form for the independent-kernel regime K = I:
// (N/2) log(1 + sigma_eps^{-2}). Grows linearly with N and upper-bounds the
// information gain of any unit-diagonal Gram matrix.
double independent_ig(int n, double noise_variance);

// Information-gain curve of Sobol designs scaled into the hypercube
// [0, L]^D, under an isotropic Matern-5/2 kernel.
struct MigCurve {
  int dim = 0;
  double side_length = 1.0;
  double lengthscale = 0.5;
  double noise_variance = 0.01;
  // (N, information gain in nats) per requested design size.
  std::vector<std::pair<int, double>> points;
};

// Evaluates the information gain of the first N (unscrambled) Sobol points
// in [0, L]^D for every N in n_grid. A conservative stand-in for the
// maximum over designs.
MigCurve sobol_mig_curve(int dim, double side_length, double lengthscale,
                         double noise_variance,
                         const std::vector<int>& n_grid);

// Closed-form bounds on the expected distance between two i.i.d. uniform
// points in [0, L]^D:
//   lower = (L/3) sqrt(D),
//   upper = (L/sqrt(6)) sqrt(D) sqrt((1 + 2 sqrt(1 - 3/(5D))) / 3).
struct DistanceBounds {
  double lower = 0.0;
  double upper = 0.0;
};

DistanceBounds expected_distance_bounds(int dim, double side_length);

// Monte-Carlo estimate of that expected distance with its standard error.
struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

McEstimate mc_expected_distance(int dim, double side_length,
                                std::int64_t n_pairs, std::uint64_t seed);

// Checks the scaling identity behind the lengthscale rule: a design X in
// [0,1]^D with isotropic lengthscale c sqrt(D) and the scaled design L*X
// with lengthscale c L sqrt(D) produce the same Gram matrix, hence the
// same information gain.
struct ScalingCheck {
  double max_gram_diff = 0.0;
  double ig_abs_diff = 0.0;
};

ScalingCheck verify_scaling_invariance(int dim, double side_length, int n,
                                       double c, std::uint64_t seed,
                                       double noise_variance = 0.01);

}  // namespace adascale

#endif  // ADASCALE_MIG_HPP
