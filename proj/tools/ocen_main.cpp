// ocen: one-class ensemble benchmarking CLI.
//
// Verbs:
//   run <config>                 execute a configured experiment, emit reports
//   report <raw-results> <dir>   rebuild the report files from raw_results.csv
//   synth <kind> [flags]         write a synthetic two-class CSV dataset
//   list-methods                 print the member and ensemble rosters
//
// Exit codes: 0 success, 1 config/usage error, 2 data error, 3 partial run.

#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ocen/harness.hpp"
#include "ocen/version.hpp"

namespace {

int cmd_run(const std::string& config_path) {
  ocen::harness::ExperimentConfig config;
  try {
    config = ocen::harness::parse_config_file(config_path);
  } catch (const ocen::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ocen::harness::exit_config_error;
  }
  ocen::harness::EvaluationReport report;
  try {
    report = ocen::harness::run_experiment(config);
    ocen::harness::emit_reports(report, config.output_dir);
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return ocen::harness::exit_data_error;
  }
  std::cout << "datasets: " << report.datasets.size() << ", cells: " << report.cells.size()
            << ", failures: " << report.failures.size() << "\n";
  std::cout << "reports written to " << config.output_dir << "\n";
  if (report.cells.empty()) {
    std::cerr << "data error: no fold produced any result\n";
    for (const auto& f : report.failures) std::cerr << "  " << f << "\n";
    return ocen::harness::exit_data_error;
  }
  if (!report.complete()) {
    std::cerr << "partial run: " << report.failures.size() << " failure(s); see run_log.txt\n";
    return ocen::harness::exit_partial;
  }
  return ocen::harness::exit_ok;
}

int cmd_report(const std::string& raw_path, const std::string& out_dir) {
  try {
    const auto report = ocen::harness::load_raw_results(raw_path);
    ocen::harness::emit_reports(report, out_dir);
    std::cout << "reports written to " << out_dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return ocen::harness::exit_data_error;
  }
  return ocen::harness::exit_ok;
}

int cmd_synth(const std::string& kind_name, std::size_t n_pos, std::size_t n_neg,
              std::size_t dim, double separation, std::uint64_t seed,
              const std::string& out_path) {
  ocen::harness::SynthKind kind;
  if (kind_name == "two-gaussian") {
    kind = ocen::harness::SynthKind::two_gaussian;
  } else if (kind_name == "uniform-ring") {
    kind = ocen::harness::SynthKind::uniform_ring;
  } else {
    std::cerr << "config error: unknown synth kind '" << kind_name
              << "' (expected two-gaussian or uniform-ring)\n";
    return ocen::harness::exit_config_error;
  }
  try {
    ocen::harness::gen_synthetic(kind, n_pos, n_neg, dim, separation, seed, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ocen::harness::exit_config_error;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return ocen::harness::exit_data_error;
  }
  std::cout << "wrote " << out_path << "\n";
  return ocen::harness::exit_ok;
}

int cmd_list_methods() {
  std::cout << "members:\n";
  for (const auto& spec : ocen::harness::default_members()) {
    std::cout << "  " << spec.display_name() << " (" << ocen::algo_name(spec.algo) << ")\n";
  }
  std::cout << "ensembles:\n";
  for (const auto& name : ocen::harness::all_ensemble_names()) {
    std::cout << "  " << name << "\n";
  }
  return ocen::harness::exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ocen: one-class classifier ensembles with fixed rules, ESBE, and "
               "a stacked meta-learner"};
  app.set_version_flag("--version", std::string(ocen::version_string));
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run a configured experiment");
  run->add_option("config", config_path, "experiment config file")->required();

  std::string raw_path, report_dir;
  auto* report = app.add_subcommand("report", "rebuild reports from raw results");
  report->add_option("raw-results", raw_path, "raw_results.csv from a previous run")
      ->required();
  report->add_option("outdir", report_dir, "output directory")->required();

  std::string synth_kind, synth_out = "synthetic.csv";
  std::size_t n_pos = 200, n_neg = 200, dim = 4;
  double separation = 3.0;
  std::uint64_t synth_seed = 1;
  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  synth->add_option("kind", synth_kind, "two-gaussian | uniform-ring")->required();
  synth->add_option("--n-pos", n_pos, "positive (class A) count");
  synth->add_option("--n-neg", n_neg, "negative (class B) count");
  synth->add_option("--dim", dim, "feature dimension");
  synth->add_option("--separation", separation, "class separation");
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--out", synth_out, "output CSV path");

  auto* list = app.add_subcommand("list-methods", "print the method rosters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    // CLI11 returns 0 for --help/--version; anything else is a usage error.
    return rc == 0 ? ocen::harness::exit_ok : ocen::harness::exit_config_error;
  }

  if (run->parsed()) return cmd_run(config_path);
  if (report->parsed()) return cmd_report(raw_path, report_dir);
  if (synth->parsed()) {
    return cmd_synth(synth_kind, n_pos, n_neg, dim, separation, synth_seed, synth_out);
  }
  if (list->parsed()) return cmd_list_methods();
  return ocen::harness::exit_config_error;
}
