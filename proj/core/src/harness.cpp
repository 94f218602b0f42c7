// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#include "adascale/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "adascale/errors.hpp"
#include "adascale/rng.hpp"

namespace adascale {
namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream stream(s);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long parsed = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" +
                      value + "'");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double parsed = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" +
                      value + "'");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (benchmark.empty()) throw ConfigError("config key 'benchmark' is required");
  if (dim < 1) throw ConfigError("config key 'dim' must be >= 1");
  if (variants.empty()) throw ConfigError("config key 'variants' is required");
  if (budget < 1) throw ConfigError("config key 'budget' must be >= 1");
  if (n_init < 1) throw ConfigError("config key 'n_init' must be >= 1");
  if (budget <= n_init) {
    throw ConfigError("config key 'budget' must exceed 'n_init'");
  }
  if (refit_every < 1) throw ConfigError("config key 'refit_every' must be >= 1");
  if (n_replicates < 1) throw ConfigError("config key 'n_replicates' must be >= 1");
  if (!(l_init > 0.0 && l_init <= 1.6)) {
    throw ConfigError("config key 'l0' must lie in (0, 1.6]");
  }
  if (!(gp_lengthscale > 0.0)) {
    throw ConfigError("config key 'gp_lengthscale' must be positive");
  }
  if (out_dir.empty()) throw ConfigError("config key 'out_dir' is required");
  // Fail early on an unknown benchmark or variant spelling.
  make_benchmark(benchmark, 1);
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  bool have_benchmark = false, have_dim = false, have_variants = false,
       have_budget = false, have_out = false;

  std::stringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) {
      throw ConfigError("config key '" + key + "': empty value");
    }

    if (key == "benchmark") {
      config.benchmark = value;
      have_benchmark = true;
    } else if (key == "dim") {
      config.dim = static_cast<int>(parse_int(key, value));
      have_dim = true;
    } else if (key == "variants") {
      for (const std::string& name : split_list(value)) {
        config.variants.push_back(variant_from_name(name));
      }
      have_variants = true;
    } else if (key == "budget") {
      config.budget = static_cast<int>(parse_int(key, value));
      have_budget = true;
    } else if (key == "n_init") {
      config.n_init = static_cast<int>(parse_int(key, value));
    } else if (key == "refit_every") {
      config.refit_every = static_cast<int>(parse_int(key, value));
    } else if (key == "n_replicates") {
      config.n_replicates = static_cast<int>(parse_int(key, value));
    } else if (key == "base_seed") {
      config.base_seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "l0") {
      config.l_init = parse_double(key, value);
    } else if (key == "gp_lengthscale") {
      config.gp_lengthscale = parse_double(key, value);
    } else if (key == "gp_seed") {
      config.gp_seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "out_dir") {
      config.out_dir = value;
      have_out = true;
    } else {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
  }

  if (!have_benchmark) throw ConfigError("config key 'benchmark' is required");
  if (!have_dim) throw ConfigError("config key 'dim' is required");
  if (!have_variants) throw ConfigError("config key 'variants' is required");
  if (!have_budget) throw ConfigError("config key 'budget' is required");
  if (!have_out) throw ConfigError("config key 'out_dir' is required");
  config.validate();
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

double median_of(std::vector<double> values) {
  if (values.empty()) throw Error("median_of: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double sample_std_error(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return sd / std::sqrt(static_cast<double>(n));
}

double quantile_linear(std::vector<double> values, double p) {
  if (values.empty()) throw Error("quantile_linear: empty input");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

SummaryTable summarize(const std::vector<RunRecord>& traces) {
  if (traces.empty()) throw MismatchedTraces("summarize: no traces");
  const std::size_t length = traces[0].rows.size();
  for (const RunRecord& trace : traces) {
    if (trace.rows.size() != length) {
      throw MismatchedTraces("summarize: traces differ in length");
    }
  }

  // Group by variant, keeping first-appearance order.
  std::vector<std::string> names;
  std::vector<std::vector<const RunRecord*>> groups;
  for (const RunRecord& trace : traces) {
    const std::string name = variant_name(trace.variant);
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      names.push_back(name);
      groups.emplace_back();
      it = names.end() - 1;
    }
    groups[static_cast<std::size_t>(it - names.begin())].push_back(&trace);
  }
  const std::size_t n_reps = groups[0].size();
  for (const auto& group : groups) {
    if (group.size() != n_reps) {
      throw MismatchedTraces(
          "summarize: variants have different replicate counts");
    }
  }

  SummaryTable table;
  table.variants = names;
  table.n_replicates = static_cast<int>(n_reps);
  table.se_degenerate = n_reps < 2;
  table.curves.resize(names.size());
  table.finals.resize(names.size());

  std::vector<double> values(n_reps);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    table.curves[g].resize(length);
    for (std::size_t i = 0; i < length; ++i) {
      for (std::size_t r = 0; r < n_reps; ++r) {
        values[r] = groups[g][r]->rows[i].best_so_far;
      }
      SummaryTable::CurvePoint& point = table.curves[g][i];
      point.median = median_of(values);
      double mean = 0.0;
      for (double v : values) mean += v;
      point.mean = mean / static_cast<double>(n_reps);
      point.std_error = sample_std_error(values);
    }
    SummaryTable::FinalStats& finals = table.finals[g];
    finals.finals.resize(n_reps);
    for (std::size_t r = 0; r < n_reps; ++r) {
      finals.finals[r] = groups[g][r]->rows.back().best_so_far;
    }
    finals.q25 = quantile_linear(finals.finals, 0.25);
    finals.median = median_of(finals.finals);
    finals.q75 = quantile_linear(finals.finals, 0.75);
    double mean = 0.0;
    for (double v : finals.finals) mean += v;
    finals.mean = mean / static_cast<double>(n_reps);
    finals.std_error = sample_std_error(finals.finals);
  }
  return table;
}

std::string trace_filename(Variant variant, int replicate) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d", replicate);
  return "trace_" + variant_name(variant) + "_rep" + buf + ".csv";
}

void write_trace_csv(const std::filesystem::path& path,
                     const RunRecord& record) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write trace file: " + path.string());
  const Eigen::Index dim = record.rows.empty() ? 0 : record.rows[0].x.size();
  out << "iter,y,best_so_far,L_at_proposal,restart_flag";
  for (Eigen::Index j = 0; j < dim; ++j) out << ",x_" << j;
  out << "\n";
  for (const EvalRow& row : record.rows) {
    out << row.index << ',' << format_double(row.y) << ','
        << format_double(row.best_so_far) << ','
        << format_double(row.side_length_at_proposal) << ','
        << (row.restart_flag ? 1 : 0);
    for (Eigen::Index j = 0; j < dim; ++j) {
      out << ',' << format_double(row.x[j]);
    }
    out << "\n";
  }
  if (!out) throw IoError("failed writing trace file: " + path.string());
}

RunRecord read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file: " + path.string());

  RunRecord record;
  const std::string stem = path.stem().string();
  // trace_<variant>_rep<digits>
  if (stem.rfind("trace_", 0) == 0) {
    const auto rep = stem.rfind("_rep");
    if (rep != std::string::npos && rep > 6) {
      record.variant = variant_from_name(stem.substr(6, rep - 6));
    }
  }

  std::string line;
  if (!std::getline(in, line)) {
    throw IoError("empty trace file: " + path.string());
  }
  const std::vector<std::string> header = split_list(line);
  if (header.size() < 5 || header[0] != "iter") {
    throw IoError("unrecognized trace header in " + path.string());
  }
  const std::size_t dim = header.size() - 5;

  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_list(line);
    if (fields.size() != header.size()) {
      throw IoError("malformed trace row in " + path.string());
    }
    EvalRow row;
    row.index = static_cast<int>(parse_int("iter", fields[0]));
    row.y = parse_double("y", fields[1]);
    row.best_so_far = parse_double("best_so_far", fields[2]);
    row.side_length_at_proposal = parse_double("L_at_proposal", fields[3]);
    row.restart_flag = fields[4] == "1";
    row.x.resize(static_cast<Eigen::Index>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
      row.x[static_cast<Eigen::Index>(j)] = parse_double("x", fields[5 + j]);
    }
    record.rows.push_back(std::move(row));
  }
  return record;
}

void write_summary_csv(const std::filesystem::path& path,
                       const SummaryTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write summary file: " + path.string());
  out << "variant,iter,median_best,mean_best,se_best\n";
  for (std::size_t g = 0; g < table.variants.size(); ++g) {
    for (std::size_t i = 0; i < table.curves[g].size(); ++i) {
      const SummaryTable::CurvePoint& point = table.curves[g][i];
      out << table.variants[g] << ',' << i << ','
          << format_double(point.median) << ',' << format_double(point.mean)
          << ',' << format_double(point.std_error) << "\n";
    }
  }
  if (!out) throw IoError("failed writing summary file: " + path.string());
}

void write_final_best_csv(const std::filesystem::path& path,
                          const SummaryTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write final-best file: " + path.string());
  out << "variant,replicate,final_best\n";
  for (std::size_t g = 0; g < table.variants.size(); ++g) {
    for (std::size_t r = 0; r < table.finals[g].finals.size(); ++r) {
      out << table.variants[g] << ',' << r << ','
          << format_double(table.finals[g].finals[r]) << "\n";
    }
  }
  if (!out) throw IoError("failed writing final-best file: " + path.string());
}

void write_summary_json(const std::filesystem::path& path,
                        const SummaryTable& table,
                        const ExperimentConfig& config) {
  nlohmann::ordered_json doc;
  doc["benchmark"] = config.benchmark;
  doc["dim"] = config.dim;
  doc["budget"] = config.budget;
  doc["n_init"] = config.n_init;
  doc["refit_every"] = config.refit_every;
  doc["n_replicates"] = table.n_replicates;
  doc["base_seed"] = config.base_seed;
  doc["l0"] = config.l_init;
  doc["se_degenerate"] = table.se_degenerate;

  nlohmann::ordered_json variants = nlohmann::ordered_json::object();
  for (std::size_t g = 0; g < table.variants.size(); ++g) {
    const SummaryTable::FinalStats& finals = table.finals[g];
    nlohmann::ordered_json entry;
    entry["final_best"] = finals.finals;
    entry["q25"] = finals.q25;
    entry["median"] = finals.median;
    entry["q75"] = finals.q75;
    entry["mean"] = finals.mean;
    entry["std_error"] = finals.std_error;
    variants[table.variants[g]] = std::move(entry);
  }
  doc["variants"] = std::move(variants);

  std::ofstream out(path);
  if (!out) throw IoError("cannot write summary json: " + path.string());
  out << doc.dump(2) << "\n";
  if (!out) throw IoError("failed writing summary json: " + path.string());
}

ExperimentResult run_experiment(const ExperimentConfig& config, int jobs) {
  config.validate();
  if (jobs < 1) throw ConfigError("jobs must be >= 1");

  const std::filesystem::path out_dir(config.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + config.out_dir);

  struct Job {
    std::size_t variant_index;
    int replicate;
  };
  std::vector<Job> job_list;
  for (int r = 0; r < config.n_replicates; ++r) {
    for (std::size_t v = 0; v < config.variants.size(); ++v) {
      job_list.push_back({v, r});
    }
  }

  std::vector<std::vector<RunRecord>> records(config.variants.size());
  for (auto& per_variant : records) {
    per_variant.resize(config.n_replicates);
  }

  const auto run_one = [&](const Job& job) {
    BenchmarkOptions options;
    options.gp_lengthscale = config.gp_lengthscale;
    // Fresh prior draw per replicate; all variants share it.
    options.gp_seed = derive_seed(config.gp_seed, job.replicate);
    const Benchmark bench =
        make_benchmark(config.benchmark, config.dim, options);

    RunConfig run_config;
    run_config.dim = config.dim;
    run_config.budget = config.budget;
    run_config.n_init = config.n_init;
    run_config.refit_every = config.refit_every;
    run_config.l_init = config.l_init;

    const BlackBox objective = [&bench](const Eigen::VectorXd& z) {
      return evaluate(bench, z);
    };
    const std::uint64_t seed =
        config.base_seed + static_cast<std::uint64_t>(job.replicate);
    records[job.variant_index][job.replicate] = run_optimizer(
        objective, config.variants[job.variant_index], run_config, seed);
  };

  if (jobs == 1) {
    for (const Job& job : job_list) run_one(job);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const int n_workers =
        std::min<int>(jobs, static_cast<int>(job_list.size()));
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) {
      workers.emplace_back([&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= job_list.size()) return;
          try {
            run_one(job_list[i]);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
          }
        }
      });
    }
    for (std::thread& worker : workers) worker.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  ExperimentResult result;
  for (std::size_t v = 0; v < config.variants.size(); ++v) {
    for (int r = 0; r < config.n_replicates; ++r) {
      const std::filesystem::path path =
          out_dir / trace_filename(config.variants[v], r);
      write_trace_csv(path, records[v][r]);
      result.files.push_back(path);
      if (!records[v][r].valid) result.partial = true;
    }
  }

  if (!result.partial) {
    std::vector<RunRecord> flat;
    flat.reserve(config.variants.size() * config.n_replicates);
    for (std::size_t v = 0; v < config.variants.size(); ++v) {
      for (int r = 0; r < config.n_replicates; ++r) {
        flat.push_back(records[v][r]);
      }
    }
    result.summary = summarize(flat);
    const std::filesystem::path summary_csv = out_dir / "summary.csv";
    const std::filesystem::path final_csv = out_dir / "final_best.csv";
    const std::filesystem::path summary_json = out_dir / "summary.json";
    write_summary_csv(summary_csv, result.summary);
    write_final_best_csv(final_csv, result.summary);
    write_summary_json(summary_json, result.summary, config);
    result.files.push_back(summary_csv);
    result.files.push_back(final_csv);
    result.files.push_back(summary_json);
  }
  return result;
}

std::vector<std::filesystem::path> expand_glob(const std::string& pattern) {
  const std::filesystem::path full(pattern);
  const std::string name_pattern = full.filename().string();
  std::filesystem::path dir = full.parent_path();
  if (dir.empty()) dir = ".";

  // Match '*' (any run) and '?' (any one character) in the filename part.
  const auto matches = [&](const std::string& name) {
    std::size_t np = 0, sp = 0;
    std::size_t star = std::string::npos, star_sp = 0;
    while (sp < name.size()) {
      if (np < name_pattern.size() &&
          (name_pattern[np] == '?' || name_pattern[np] == name[sp])) {
        ++np;
        ++sp;
      } else if (np < name_pattern.size() && name_pattern[np] == '*') {
        star = np++;
        star_sp = sp;
      } else if (star != std::string::npos) {
        np = star + 1;
        sp = ++star_sp;
      } else {
        return false;
      }
    }
    while (np < name_pattern.size() && name_pattern[np] == '*') ++np;
    return np == name_pattern.size();
  };

  std::vector<std::filesystem::path> out;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && matches(entry.path().filename().string())) {
      out.push_back(entry.path());
    }
  }
  if (ec) throw IoError("cannot list directory: " + dir.string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace adascale
