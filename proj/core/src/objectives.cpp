// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#include "adascale/objectives.hpp"

#include <cmath>
#include <numbers>

#include "adascale/errors.hpp"

namespace adascale {
namespace {

using std::numbers::pi;

double schwefel(const Eigen::VectorXd& x) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    sum += x[i] * std::sin(std::sqrt(std::abs(x[i])));
  }
  return 418.9829 * static_cast<double>(x.size()) - sum;
}

double rastrigin(const Eigen::VectorXd& x) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i] - 10.0 * std::cos(2.0 * pi * x[i]);
  }
  return 10.0 * static_cast<double>(x.size()) + sum;
}

double michalewicz(const Eigen::VectorXd& x, int m) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double s =
        std::sin(static_cast<double>(i + 1) * x[i] * x[i] / pi);
    sum += std::sin(x[i]) * std::pow(s, 2 * m);
  }
  return -sum;
}

BoxBounds constant_box(int dim, double lo, double hi) {
  return BoxBounds(Eigen::VectorXd::Constant(dim, lo),
                   Eigen::VectorXd::Constant(dim, hi));
}

}  // namespace

Benchmark make_benchmark(BenchmarkName name, int dim,
                         const BenchmarkOptions& options) {
  if (dim < 1) {
    throw Error("make_benchmark: dim must be >= 1");
  }
  Benchmark bench;
  bench.name = name;
  bench.dim = dim;
  switch (name) {
    case BenchmarkName::Schwefel:
      bench.native_bounds = constant_box(dim, -500.0, 500.0);
      break;
    case BenchmarkName::Rastrigin:
      bench.native_bounds = constant_box(dim, -5.12, 5.12);
      break;
    case BenchmarkName::Michalewicz:
      bench.native_bounds = constant_box(dim, 0.0, pi);
      break;
    case BenchmarkName::GpPriorSample:
      bench.native_bounds = constant_box(dim, 0.0, 1.0);
      bench.gp_sample = std::make_shared<PriorSampleObjective>(
          sample_prior_objective(dim, options.gp_lengthscale,
                                 options.gp_features, options.gp_seed));
      break;
    case BenchmarkName::Sphere:
      bench.native_bounds = constant_box(dim, 0.0, 1.0);
      break;
  }
  return bench;
}

Benchmark make_benchmark(const std::string& name, int dim,
                         const BenchmarkOptions& options) {
  if (name == "schwefel") return make_benchmark(BenchmarkName::Schwefel, dim, options);
  if (name == "rastrigin") return make_benchmark(BenchmarkName::Rastrigin, dim, options);
  if (name == "michalewicz") return make_benchmark(BenchmarkName::Michalewicz, dim, options);
  if (name == "gp_prior_sample") return make_benchmark(BenchmarkName::GpPriorSample, dim, options);
  if (name == "sphere") return make_benchmark(BenchmarkName::Sphere, dim, options);
  throw ConfigError("unknown benchmark: '" + name +
                    "' (expected schwefel, rastrigin, michalewicz, "
                    "gp_prior_sample, or sphere)");
}

std::string benchmark_name(BenchmarkName name) {
  switch (name) {
    case BenchmarkName::Schwefel: return "schwefel";
    case BenchmarkName::Rastrigin: return "rastrigin";
    case BenchmarkName::Michalewicz: return "michalewicz";
    case BenchmarkName::GpPriorSample: return "gp_prior_sample";
    case BenchmarkName::Sphere: return "sphere";
  }
  throw Error("benchmark_name: unknown benchmark");
}

Eigen::VectorXd to_native(const Eigen::VectorXd& z, const BoxBounds& bounds) {
  if (z.size() != bounds.dim()) {
    throw Error("to_native: dimension mismatch");
  }
  if ((z.array() < 0.0).any() || (z.array() > 1.0).any()) {
    throw OutOfDomain("to_native: point leaves the unit cube");
  }
  return bounds.lower.array() +
         (bounds.upper - bounds.lower).array() * z.array();
}

double evaluate(const Benchmark& benchmark, const Eigen::VectorXd& z) {
  const Eigen::VectorXd x = to_native(z, benchmark.native_bounds);
  switch (benchmark.name) {
    case BenchmarkName::Schwefel: return schwefel(x);
    case BenchmarkName::Rastrigin: return rastrigin(x);
    case BenchmarkName::Michalewicz:
      return michalewicz(x, benchmark.michalewicz_m);
    case BenchmarkName::GpPriorSample: return (*benchmark.gp_sample)(x);
    case BenchmarkName::Sphere: return (x.array() - 0.5).matrix().squaredNorm();
  }
  throw Error("evaluate: unknown benchmark");
}

}  // namespace adascale
