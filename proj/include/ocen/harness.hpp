#pragma once

// Config-driven experiment runner: 5x2 cross-validated AUC benchmarking of
// the base members and every ensemble, plus report emission and synthetic
// dataset generation.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ocen/classifiers.hpp"
#include "ocen/combiners.hpp"
#include "ocen/dataset_io.hpp"
#include "ocen/estimation.hpp"

namespace ocen::harness {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DatasetConfig {
  std::string name;
  std::string path;
  std::string class_column;
  std::string target_class;  // optional override
  std::optional<char> delimiter;
  std::optional<std::set<std::string>> missing_tokens;
};

// The stacking meta-classifier used when the config names none:
// density_agg with a geometric mean and s = 0.01.
ClassifierSpec default_meta_spec();

struct ExperimentConfig {
  std::vector<DatasetConfig> datasets;
  std::vector<ClassifierSpec> members;    // default: the six-member roster
  std::vector<std::string> ensembles;     // default: all ensemble methods
  Metric metric = Metric::ocf;
  double prior = 0.5;
  std::uint64_t seed = 1;
  std::size_t inner_k = 10;
  ClassifierSpec meta_spec = default_meta_spec();
  std::array<bool, 8> meta_features = all_meta_features;
  std::string output_dir = "ocen_out";
  char delimiter = ',';
  std::set<std::string> missing_tokens = {"?", ""};
};

// The six default ensemble members.
std::vector<ClassifierSpec> default_members();
// All ensemble method names in roster order (eight fixed rules, esbe, tupso,
// random_baseline, actual_best).
std::vector<std::string> all_ensemble_names();

// Parse the sectioned key = value config format; throws ConfigError.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

struct RawCell {
  std::string dataset;
  std::string method;
  int repetition = 0;  // 0..4
  int fold = 0;        // 0..1
  double auc_value = 0.0;
};

struct FoldLogEntry {
  std::string dataset;
  int repetition = 0;
  int fold = 0;
  std::size_t n_train_positives = 0;
  std::size_t n_test = 0;
  std::string status;  // "ok" or an error message
};

struct EvaluationReport {
  std::vector<std::string> datasets;  // config order; only datasets that loaded
  std::vector<std::string> members;   // display names, roster order
  std::vector<std::string> ensembles;
  std::vector<RawCell> cells;         // deterministic order
  std::vector<std::string> failures;  // human-readable failure records
  std::vector<FoldLogEntry> fold_log;
  std::uint64_t seed = 0;
  std::string metric;
  double prior = 0.5;
  std::size_t inner_k = 10;
  double wall_seconds = 0.0;

  std::vector<std::string> all_methods() const;  // members then ensembles
  // Mean AUC per (dataset, method); NaN where no cell exists.
  std::vector<std::vector<double>> mean_table(const std::vector<std::string>& methods) const;
  bool complete() const;  // every (dataset, method, rep, fold) cell present
};

EvaluationReport run_experiment(const ExperimentConfig& config);

// Writes raw_results.csv, members_table.txt, ensembles_table.txt,
// stats_summary.txt, and run_log.txt into dir (created if needed).
void emit_reports(const EvaluationReport& report, const std::string& dir);

// Rebuild an EvaluationReport (tables only; no fold log) from a saved
// raw_results.csv. Method kinds are recovered from the known ensemble names.
EvaluationReport load_raw_results(const std::string& path);

enum class SynthKind { two_gaussian, uniform_ring };

// Write a synthetic CSV dataset. two-gaussian: positives (class A) from
// N(0, I), negatives (class B) from N(-separation * 1, I). uniform-ring:
// positives from N(0, I), negatives uniform on the sphere of radius
// separation. Deterministic under seed.
void gen_synthetic(SynthKind kind, std::size_t n_pos, std::size_t n_neg,
                   std::size_t dim, double separation, std::uint64_t seed,
                   const std::string& out_path);

// Exit codes: 0 success, 1 config error, 2 data error, 3 partial run.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 1;
inline constexpr int exit_data_error = 2;
inline constexpr int exit_partial = 3;

}  // namespace ocen::harness
