// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_OBJECTIVES_HPP
#define ADASCALE_OBJECTIVES_HPP

#include <cstdint>
#include <memory>
#include <string>

#include <Eigen/Dense>

#include "adascale/linalg.hpp"
#include "adascale/prior_sample.hpp"

namespace adascale {

enum class BenchmarkName {
  Schwefel,      // native [-500, 500]^D, minimum 0 at x ~ 420.9687
  Rastrigin,     // native [-5.12, 5.12]^D, minimum 0 at the origin
  Michalewicz,   // native [0, pi]^D, steepness m = 10
  GpPriorSample, // draw from an isotropic Matern-5/2 GP prior
  Sphere,        // ||z - 0.5||^2 on [0,1]^D; smoke-test only, not a
                 // standard benchmark
};

// A synthetic minimization objective. Callers always query through the
// normalized domain [0,1]^D; evaluation maps to the native box first.
struct Benchmark {
  BenchmarkName name = BenchmarkName::Sphere;
  int dim = 0;
  BoxBounds native_bounds;
  int michalewicz_m = 10;
  std::shared_ptr<const PriorSampleObjective> gp_sample;
};

struct BenchmarkOptions {
  double gp_lengthscale = 0.1;
  std::uint64_t gp_seed = 0;
  int gp_features = 2048;
};

Benchmark make_benchmark(BenchmarkName name, int dim,
                         const BenchmarkOptions& options = {});
Benchmark make_benchmark(const std::string& name, int dim,
                         const BenchmarkOptions& options = {});

std::string benchmark_name(BenchmarkName name);

// Affine map from the unit cube to a native box, x = a + (b - a) .* z.
// Throws OutOfDomain when any coordinate of z leaves [0, 1].
Eigen::VectorXd to_native(const Eigen::VectorXd& z, const BoxBounds& bounds);

double evaluate(const Benchmark& benchmark, const Eigen::VectorXd& z);

}  // namespace adascale

#endif  // ADASCALE_OBJECTIVES_HPP
