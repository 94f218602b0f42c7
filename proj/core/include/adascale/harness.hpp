// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_HARNESS_HPP
#define ADASCALE_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "adascale/objectives.hpp"
#include "adascale/trust_region.hpp"

namespace adascale {

// One experiment: a benchmark, a set of optimizer variants, and seeded
// replicates. Replicate r runs every variant with seed base_seed + r, so
// all variants share the same initialization design within a replicate.
struct ExperimentConfig {
  std::string benchmark;
  int dim = 0;
  std::vector<Variant> variants;
  int budget = 0;
  int n_init = 10;
  int refit_every = 10;
  int n_replicates = 10;
  std::uint64_t base_seed = 0;
  double l_init = 0.8;  // initial trust-region side length (ablation knob)
  double gp_lengthscale = 0.1;  // gp_prior_sample benchmark only
  std::uint64_t gp_seed = 0;    // base seed for per-replicate prior draws
  std::string out_dir;

  void validate() const;  // throws ConfigError naming the offending key
};

// Flat key = value file with '#' comments. Unknown keys, missing required
// keys, and unparsable values raise ConfigError naming the key.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Cross-replicate statistics of the best-so-far trajectories.
struct SummaryTable {
  struct CurvePoint {
    double median = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
  };
  struct FinalStats {
    std::vector<double> finals;  // one per replicate, in replicate order
    double q25 = 0.0;
    double median = 0.0;
    double q75 = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
  };

  std::vector<std::string> variants;
  std::vector<std::vector<CurvePoint>> curves;  // [variant][iteration]
  std::vector<FinalStats> finals;               // [variant]
  int n_replicates = 0;
  bool se_degenerate = false;  // single replicate: std errors reported as 0
};

// Groups traces by variant and reduces them. All traces must have equal
// length and every variant the same replicate count; anything else raises
// MismatchedTraces. Median is the middle order statistic (mean of the two
// middles for even counts); the standard error is the sample standard
// deviation over sqrt(n); quartiles interpolate linearly.
SummaryTable summarize(const std::vector<RunRecord>& traces);

// Order-statistics helpers shared with the summary computations.
double median_of(std::vector<double> values);
double sample_std_error(const std::vector<double>& values);
double quantile_linear(std::vector<double> values, double p);

std::string trace_filename(Variant variant, int replicate);
void write_trace_csv(const std::filesystem::path& path,
                     const RunRecord& record);
RunRecord read_trace_csv(const std::filesystem::path& path);
void write_summary_csv(const std::filesystem::path& path,
                       const SummaryTable& table);
void write_final_best_csv(const std::filesystem::path& path,
                          const SummaryTable& table);
void write_summary_json(const std::filesystem::path& path,
                        const SummaryTable& table,
                        const ExperimentConfig& config);

struct ExperimentResult {
  std::vector<std::filesystem::path> files;
  SummaryTable summary;
  bool partial = false;  // some run hit an objective failure
};

// Runs the full experiment, fanning (variant, replicate) pairs across up
// to `jobs` worker threads, then persists one trace CSV per run plus the
// summary CSV/JSON. Reruns with an identical config write identical bytes.
ExperimentResult run_experiment(const ExperimentConfig& config, int jobs = 1);

// Expands a glob pattern ('*' and '?' in the filename component) into a
// sorted path list.
std::vector<std::filesystem::path> expand_glob(const std::string& pattern);

}  // namespace adascale

#endif  // ADASCALE_HARNESS_HPP
