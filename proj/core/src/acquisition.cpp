// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#include "adascale/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "adascale/errors.hpp"
#include "adascale/lbfgsb.hpp"
#include "adascale/normal.hpp"
#include "adascale/rng.hpp"
#include "adascale/sobol.hpp"

namespace adascale {
namespace {

// log(phi(z) + z Phi(z)). Direct for z >= -6; Mills-ratio expansion
// h = phi(a)/a^2 (1 - 3/a^2 + 15/a^4 - ...), a = -z, below that.
double log_h(double z) {
  const NormalLogs logs = std_normal_logs(z);
  if (z >= -6.0) {
    return std::log(std::exp(logs.log_pdf) + z * std::exp(logs.log_cdf));
  }
  const double a = -z;
  const double inv_a2 = 1.0 / (a * a);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 20; ++k) {
    const double next = term * -(2.0 * k + 1.0) * inv_a2;
    if (std::abs(next) >= std::abs(term)) break;
    sum += next;
    term = next;
    if (std::abs(next) < 1e-17 * std::abs(sum)) break;
  }
  return logs.log_pdf - 2.0 * std::log(a) + std::log(sum);
}

// Variance floor used while optimizing, so the acquisition surface stays
// finite at (numerically) interpolated training points.
constexpr double kVarianceFloor = 1e-18;

}  // namespace

double log_ei(double mean, double std, double best) {
  if (!(std >= 0.0)) {
    throw Error("log_ei: std must be nonnegative");
  }
  if (std == 0.0) {
    const double improvement = best - mean;
    return improvement > 0.0 ? std::log(improvement)
                             : -std::numeric_limits<double>::infinity();
  }
  const double z = (best - mean) / std;
  return std::log(std) + log_h(z);
}

Eigen::VectorXd optimize_acq(const GpModel& model, double best,
                             const BoxBounds& box, const AcqOptConfig& config,
                             std::uint64_t seed) {
  const Eigen::Index dim = box.dim();
  if (dim != model.dim()) {
    throw Error("optimize_acq: box and model dimensions differ");
  }
  if (config.n_raw < 1 || config.n_starts < 1 ||
      config.n_starts > config.n_raw) {
    throw Error("optimize_acq: need 1 <= n_starts <= n_raw");
  }

  const auto score_one = [&](const Eigen::VectorXd& x) {
    const auto [mean, variance] = model.posterior_one(x);
    return log_ei(mean, std::sqrt(std::max(variance, kVarianceFloor)), best);
  };

  const Eigen::MatrixXd raw =
      sobol_in_box(config.n_raw, box, derive_seed(seed, 0), true);
  Eigen::VectorXd mean, variance;
  model.posterior(raw, mean, variance);
  Eigen::VectorXd scores(config.n_raw);
  for (int i = 0; i < config.n_raw; ++i) {
    scores[i] = log_ei(
        mean[i], std::sqrt(std::max(variance[i], kVarianceFloor)), best);
  }

  // Rank raw candidates; stable order keeps the lowest Sobol index ahead
  // on ties, which pins down the flat-landscape case.
  std::vector<int> order(config.n_raw);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&scores](int a, int b) { return scores[a] > scores[b]; });

  Eigen::VectorXd best_x = raw.row(order[0]).transpose();
  double best_score = scores[order[0]];

  // Objective for refinement: negative log EI with a batched
  // central-difference gradient (one posterior call per gradient).
  GradObjective objective = [&](const Eigen::VectorXd& x,
                                Eigen::VectorXd* grad) -> double {
    if (grad != nullptr) {
      Eigen::MatrixXd probes(2 * dim, dim);
      Eigen::VectorXd h(dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        h[i] = 1e-6 * (1.0 + std::abs(x[i]));
        probes.row(2 * i) = x.transpose();
        probes(2 * i, i) += h[i];
        probes.row(2 * i + 1) = x.transpose();
        probes(2 * i + 1, i) -= h[i];
      }
      Eigen::VectorXd pm, pv;
      model.posterior(probes, pm, pv);
      for (Eigen::Index i = 0; i < dim; ++i) {
        const double fp = -log_ei(
            pm[2 * i], std::sqrt(std::max(pv[2 * i], kVarianceFloor)), best);
        const double fm =
            -log_ei(pm[2 * i + 1],
                    std::sqrt(std::max(pv[2 * i + 1], kVarianceFloor)), best);
        (*grad)[i] = (fp - fm) / (2.0 * h[i]);
      }
    }
    return -score_one(x);
  };

  MinimizeOptions options;
  options.max_iter = config.max_iter;
  options.tol = config.tol;

  for (int s = 0; s < config.n_starts; ++s) {
    const Eigen::VectorXd start = raw.row(order[s]).transpose();
    try {
      const MinimizeResult res = bounded_minimize(objective, box, start, options);
      const double score = -res.value;
      if (score > best_score) {
        best_score = score;
        best_x = res.x;
      }
    } catch (const Error&) {
      continue;  // keep the best candidate found so far
    }
  }
  return box.clip(best_x);
}

}  // namespace adascale
