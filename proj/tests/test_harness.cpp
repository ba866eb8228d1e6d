#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "ocen/harness.hpp"

using namespace ocen;
using namespace ocen::harness;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "ocen_harness_tests";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("default roster and ensemble catalogue") {
  const auto members = default_members();
  REQUIRE(members.size() == 6);
  const std::vector<std::string> names = {"density_hm", "density_gm",  "gde",
                                          "pga",        "svm_linear", "svm_poly"};
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(members[i].display_name() == names[i]);
    CHECK_NOTHROW(members[i].validate());
  }

  const auto ensembles = all_ensemble_names();
  REQUIRE(ensembles.size() == 12);
  CHECK(ensembles[0] == "majority");
  CHECK(ensembles[7] == "weighted_vote_product");
  CHECK(ensembles[8] == "esbe");
  CHECK(ensembles[9] == "tupso");
  CHECK(ensembles[10] == "random_baseline");
  CHECK(ensembles[11] == "actual_best");

  const auto meta = default_meta_spec();
  CHECK(meta.algo == Algo::density_agg);
  CHECK(meta.psi == PsiMean::geometric);
  CHECK(meta.s == doctest::Approx(0.01));
}

TEST_CASE("minimal config fills in every default") {
  const auto cfg = parse_config_text(
      "[dataset]\n"
      "path = data/spam.csv\n"
      "class_column = class\n");
  CHECK(cfg.seed == 1);
  CHECK(cfg.metric == Metric::ocf);
  CHECK(cfg.prior == doctest::Approx(0.5));
  CHECK(cfg.inner_k == 10);
  CHECK(cfg.output_dir == "ocen_out");
  CHECK(cfg.delimiter == ',');
  CHECK(cfg.members.size() == 6);
  CHECK(cfg.ensembles.size() == 12);
  REQUIRE(cfg.datasets.size() == 1);
  CHECK(cfg.datasets[0].name == "spam");  // stem of the path
  CHECK(cfg.datasets[0].class_column == "class");
  CHECK(cfg.meta_spec.psi == PsiMean::geometric);
  for (bool b : cfg.meta_features) CHECK(b);
}

TEST_CASE("run keys, comments, and whitespace are honoured") {
  const auto cfg = parse_config_text(
      "# experiment sweep\n"
      "[run]\n"
      "seed =  42\n"
      "metric = oca\n"
      "prior = 0.25\n"
      "inner_k = 4\n"
      "; semicolon comments too\n"
      "output_dir = out/run1\n"
      "meta_classifier = pga\n"
      "meta_features = f2, f7\n"
      "ensembles = tupso, majority\n"
      "delimiter = tab\n"
      "missing_tokens = ?, NA\n"
      "\n"
      "[dataset]\n"
      "name = first\n"
      "path = a.tsv\n"
      "class_column = label\n"
      "target_class = yes\n"
      "delimiter = ;\n"
      "missing_tokens = none\n"
      "[dataset]\n"
      "path = b.csv\n"
      "class_column = label\n");
  CHECK(cfg.seed == 42);
  CHECK(cfg.metric == Metric::oca);
  CHECK(cfg.prior == doctest::Approx(0.25));
  CHECK(cfg.inner_k == 4);
  CHECK(cfg.output_dir == "out/run1");
  CHECK(cfg.meta_spec.algo == Algo::pga);
  CHECK(cfg.meta_spec.display_name() == "meta_pga");
  std::array<bool, 8> expect{};
  expect[1] = expect[6] = true;
  CHECK(cfg.meta_features == expect);
  CHECK(cfg.ensembles == std::vector<std::string>{"tupso", "majority"});
  CHECK(cfg.delimiter == '\t');
  CHECK(cfg.missing_tokens == std::set<std::string>{"?", "NA"});

  REQUIRE(cfg.datasets.size() == 2);
  CHECK(cfg.datasets[0].name == "first");
  CHECK(cfg.datasets[0].target_class == "yes");
  REQUIRE(cfg.datasets[0].delimiter.has_value());
  CHECK(*cfg.datasets[0].delimiter == ';');
  REQUIRE(cfg.datasets[0].missing_tokens.has_value());
  CHECK(cfg.datasets[0].missing_tokens->count("none") == 1);
  CHECK(cfg.datasets[1].name == "b");
  CHECK_FALSE(cfg.datasets[1].delimiter.has_value());
}

TEST_CASE("member sections replace the default roster") {
  const auto cfg = parse_config_text(
      "[dataset]\n"
      "path = x.csv\n"
      "class_column = class\n"
      "[member]\n"
      "algo = pga\n"
      "name = my_pga\n"
      "p_alpha = 0.1\n"
      "k_nn = 2\n"
      "[member]\n"
      "algo = ocsvm\n"
      "kernel = polynomial\n"
      "degree = 3\n"
      "nu = 0.2\n");
  REQUIRE(cfg.members.size() == 2);
  CHECK(cfg.members[0].display_name() == "my_pga");
  CHECK(cfg.members[0].p_alpha == doctest::Approx(0.1));
  CHECK(cfg.members[0].k_nn == 2);
  CHECK(cfg.members[1].algo == Algo::ocsvm);
  CHECK(cfg.members[1].kernel == KernelKind::polynomial);
  CHECK(cfg.members[1].degree == 3);
  CHECK(cfg.members[1].nu == doctest::Approx(0.2));
}

TEST_CASE("config errors carry line numbers and clear causes") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      parse_config_text(text);
      FAIL_CHECK("expected ConfigError for: " << needle);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_error("", "no [dataset]");
  expect_error("[dataset]\npath = x\nclass_column = c\n[weird]\n", "unknown section");
  expect_error("key = 1\n", "outside any section");
  expect_error("[run]\nnot a pair\n", "expected 'key = value'");
  expect_error("[run]\nseed = 1\nseed = 2\n[dataset]\npath = x\nclass_column = c\n",
               "line 3: duplicate key 'seed'");
  expect_error("[run]\nseed = abc\n[dataset]\npath = x\nclass_column = c\n",
               "bad integer");
  expect_error("[run]\nprior = 1.5\n[dataset]\npath = x\nclass_column = c\n",
               "prior must be in");
  expect_error("[run]\ninner_k = 1\n[dataset]\npath = x\nclass_column = c\n",
               "inner_k must be >= 2");
  expect_error("[run]\nbogus = 1\n[dataset]\npath = x\nclass_column = c\n",
               "unknown [run] key");
  expect_error("[run]\nensembles = tupso, nonesuch\n[dataset]\npath = x\nclass_column = c\n",
               "unknown ensemble");
  expect_error("[run]\nmeta_features = f9\n[dataset]\npath = x\nclass_column = c\n",
               "f1..f8");
  expect_error("[run]\nmeta_classifier = mystery\n[dataset]\npath = x\nclass_column = c\n",
               "unknown meta_classifier");
  expect_error("[run]\ndelimiter = ab\n[dataset]\npath = x\nclass_column = c\n",
               "single character");
  expect_error("[dataset]\nclass_column = c\n", "missing 'path'");
  expect_error("[dataset]\npath = x\n", "missing 'class_column'");
  expect_error("[dataset]\npath = x\nclass_column = c\nshape = round\n",
               "unknown [dataset] key");
  expect_error(
      "[dataset]\npath = x\nclass_column = c\n[dataset]\npath = x\nclass_column = c\n",
      "duplicate dataset name");
  expect_error("[dataset]\npath = x\nclass_column = c\n[member]\np_alpha = 0.1\n",
               "missing 'algo'");
  expect_error("[dataset]\npath = x\nclass_column = c\n[member]\nalgo = forest\n",
               "unknown algorithm");
  expect_error("[dataset]\npath = x\nclass_column = c\n[member]\nalgo = pga\nflavor = hot\n",
               "unknown [member] key");
  expect_error(
      "[dataset]\npath = x\nclass_column = c\n[member]\nalgo = pga\np_alpha = 2\n",
      "p_alpha");
  expect_error(
      "[dataset]\npath = x\nclass_column = c\n"
      "[member]\nalgo = pga\n[member]\nalgo = pga\n",
      "duplicate member name");
  expect_error("[dataset\npath = x\n", "unterminated section");
  expect_error("[run]\n= 3\n[dataset]\npath = x\nclass_column = c\n", "empty key");
  expect_error("[run]\nmetric = f1\n[dataset]\npath = x\nclass_column = c\n", "metric");

  // parse_config_file surfaces missing files as ConfigError too.
  CHECK_THROWS_AS(parse_config_file((work_dir() / "nope.cfg").string()), ConfigError);
}

TEST_CASE("synthetic generator writes deterministic labeled CSVs") {
  const fs::path a = work_dir() / "synth_a.csv";
  const fs::path b = work_dir() / "synth_b.csv";
  const fs::path c = work_dir() / "synth_c.csv";
  gen_synthetic(SynthKind::two_gaussian, 12, 15, 3, 4.0, 9, a.string());
  gen_synthetic(SynthKind::two_gaussian, 12, 15, 3, 4.0, 9, b.string());
  gen_synthetic(SynthKind::two_gaussian, 12, 15, 3, 4.0, 10, c.string());

  const std::string text = slurp(a);
  CHECK(text == slurp(b));   // same seed, byte-identical
  CHECK(text != slurp(c));   // different seed, different draws

  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "f1,f2,f3,class");
  std::size_t rows = 0, a_rows = 0, b_rows = 0;
  double b_coord_sum = 0.0;
  std::size_t b_coords = 0;
  while (std::getline(in, line)) {
    ++rows;
    REQUIRE(!line.empty());
    const char cls = line.back();
    if (cls == 'A') ++a_rows;
    if (cls == 'B') ++b_rows;
    if (cls == 'B') {
      std::istringstream fields(line);
      std::string cell;
      for (int j = 0; j < 3; ++j) {
        REQUIRE(std::getline(fields, cell, ','));
        b_coord_sum += std::stod(cell);
        ++b_coords;
      }
    }
  }
  CHECK(rows == 27);
  CHECK(a_rows == 12);
  CHECK(b_rows == 15);
  // two-gaussian negatives sit near -separation on every axis.
  CHECK(b_coord_sum / static_cast<double>(b_coords) == doctest::Approx(-4.0).epsilon(0.2));

  // uniform-ring negatives lie exactly on the radius-separation sphere.
  const fs::path ring = work_dir() / "synth_ring.csv";
  gen_synthetic(SynthKind::uniform_ring, 10, 12, 4, 6.0, 3, ring.string());
  std::istringstream rin(slurp(ring));
  REQUIRE(std::getline(rin, line));
  while (std::getline(rin, line)) {
    if (line.back() != 'B') continue;
    std::istringstream fields(line);
    std::string cell;
    double norm2 = 0.0;
    for (int j = 0; j < 4; ++j) {
      REQUIRE(std::getline(fields, cell, ','));
      const double v = std::stod(cell);
      norm2 += v * v;
    }
    CHECK(std::sqrt(norm2) == doctest::Approx(6.0).epsilon(1e-9));
  }

  CHECK_THROWS_AS(gen_synthetic(SynthKind::two_gaussian, 9, 15, 3, 4.0, 9,
                                (work_dir() / "bad.csv").string()),
                  std::invalid_argument);
  CHECK_THROWS_AS(gen_synthetic(SynthKind::two_gaussian, 12, 15, 0, 4.0, 9,
                                (work_dir() / "bad.csv").string()),
                  std::invalid_argument);
  CHECK_THROWS_AS(gen_synthetic(SynthKind::two_gaussian, 12, 15, 3, -1.0, 9,
                                (work_dir() / "bad.csv").string()),
                  std::invalid_argument);
}

TEST_CASE("run_experiment: deterministic, complete, and sane on synthetic data") {
  const fs::path csv = work_dir() / "run_input.csv";
  gen_synthetic(SynthKind::two_gaussian, 30, 30, 3, 4.0, 5, csv.string());

  const std::string cfg_text =
      "[run]\nseed = 11\n[dataset]\nname = synth\npath = " + csv.string() +
      "\nclass_column = class\n";
  const auto cfg = parse_config_text(cfg_text);
  const auto report = run_experiment(cfg);

  CHECK(report.datasets == std::vector<std::string>{"synth"});
  CHECK(report.members.size() == 6);
  CHECK(report.ensembles.size() == 12);
  CHECK(report.complete());
  CHECK(report.cells.size() == 1 * 18 * 10);
  CHECK(report.failures.empty());
  CHECK(report.fold_log.size() == 10);
  for (const auto& entry : report.fold_log) CHECK(entry.status == "ok");
  CHECK(report.seed == 11);
  CHECK(report.metric == "OCF");

  for (const auto& cell : report.cells) {
    CHECK(cell.auc_value >= 0.0);
    CHECK(cell.auc_value <= 1.0);
    CHECK(cell.repetition >= 0);
    CHECK(cell.repetition <= 4);
    CHECK(cell.fold >= 0);
    CHECK(cell.fold <= 1);
  }

  // Bitwise reproducibility of the whole cell stream.
  const auto rerun = run_experiment(cfg);
  REQUIRE(rerun.cells.size() == report.cells.size());
  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    CHECK(rerun.cells[i].dataset == report.cells[i].dataset);
    CHECK(rerun.cells[i].method == report.cells[i].method);
    CHECK(rerun.cells[i].repetition == report.cells[i].repetition);
    CHECK(rerun.cells[i].fold == report.cells[i].fold);
    CHECK(rerun.cells[i].auc_value == report.cells[i].auc_value);
  }

  // Per-(rep, fold) lookup for the baseline checks.
  std::map<std::string, std::map<std::pair<int, int>, double>> by_method;
  for (const auto& cell : report.cells) {
    by_method[cell.method][{cell.repetition, cell.fold}] = cell.auc_value;
  }

  // actual_best copies the member with the best mean AUC, cell for cell.
  double best_mean = -1.0;
  std::string best_member;
  for (const auto& m : report.members) {
    double mean = 0.0;
    for (const auto& [rf, v] : by_method[m]) mean += v;
    mean /= 10.0;
    if (mean > best_mean) {
      best_mean = mean;
      best_member = m;
    }
  }
  for (const auto& [rf, v] : by_method["actual_best"]) {
    CHECK(v == by_method[best_member][rf]);
  }

  // random_baseline copies one member's column verbatim.
  bool matched_one_member = false;
  for (const auto& m : report.members) {
    bool all_equal = true;
    for (const auto& [rf, v] : by_method["random_baseline"]) {
      if (by_method[m][rf] != v) {
        all_equal = false;
        break;
      }
    }
    if (all_equal) matched_one_member = true;
  }
  CHECK(matched_one_member);

  // mean_table: rows = datasets, cols = methods, all populated here.
  const auto methods = report.all_methods();
  CHECK(methods.size() == 18);
  const auto table = report.mean_table(methods);
  REQUIRE(table.size() == 1);
  for (double v : table[0]) {
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  // On a separation-4 task the best member should be strongly better than
  // chance, and tupso should land in a sane band.
  CHECK(best_mean > 0.8);
  double tupso_mean = 0.0;
  for (const auto& [rf, v] : by_method["tupso"]) tupso_mean += v;
  CHECK(tupso_mean / 10.0 > 0.6);

  // emit_reports writes the five artifacts; raw_results.csv reruns byte-identical.
  const fs::path out1 = work_dir() / "report_a";
  const fs::path out2 = work_dir() / "report_b";
  emit_reports(report, out1.string());
  emit_reports(rerun, out2.string());
  for (const char* f : {"raw_results.csv", "members_table.txt", "ensembles_table.txt",
                        "stats_summary.txt", "run_log.txt"}) {
    CAPTURE(f);
    CHECK(fs::exists(out1 / f));
  }
  CHECK(slurp(out1 / "raw_results.csv") == slurp(out2 / "raw_results.csv"));
  CHECK(slurp(out1 / "members_table.txt") == slurp(out2 / "members_table.txt"));

  // load_raw_results reconstructs the report tables exactly.
  const auto revived = load_raw_results((out1 / "raw_results.csv").string());
  CHECK(revived.datasets == report.datasets);
  CHECK(revived.members == report.members);
  CHECK(revived.ensembles == report.ensembles);
  REQUIRE(revived.cells.size() == report.cells.size());
  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    CHECK(revived.cells[i].method == report.cells[i].method);
    CHECK(revived.cells[i].auc_value == report.cells[i].auc_value);  // %.17g round-trip
  }
  CHECK(revived.complete());
}

TEST_CASE("run_experiment records dataset failures instead of aborting") {
  const fs::path good = work_dir() / "good.csv";
  gen_synthetic(SynthKind::two_gaussian, 20, 20, 2, 3.0, 8, good.string());

  auto cfg = parse_config_text(
      "[run]\nseed = 3\nensembles = majority\n"
      "[dataset]\nname = ghost\npath = " +
      (work_dir() / "missing.csv").string() +
      "\nclass_column = class\n"
      "[dataset]\nname = good\npath = " +
      good.string() + "\nclass_column = class\n");
  // Trim the roster for speed: density only.
  cfg.members = {default_members()[1]};

  const auto report = run_experiment(cfg);
  CHECK(report.datasets == std::vector<std::string>{"good"});
  REQUIRE(report.failures.size() == 1);
  CHECK(report.failures[0].find("ghost") != std::string::npos);
  CHECK_FALSE(report.complete());
  // The good dataset still produced its full 2 methods x 10 folds.
  CHECK(report.cells.size() == 2 * 10);

  // A run where nothing loads yields no cells at all.
  auto empty_cfg = parse_config_text(
      "[dataset]\nname = ghost\npath = " + (work_dir() / "missing.csv").string() +
      "\nclass_column = class\n");
  const auto empty = run_experiment(empty_cfg);
  CHECK(empty.cells.empty());
  CHECK_FALSE(empty.complete());
  CHECK(empty.failures.size() == 1);
}

TEST_CASE("load_raw_results rejects malformed files") {
  const fs::path dir = work_dir();
  CHECK_THROWS_AS(load_raw_results((dir / "absent.csv").string()), io::DataError);

  const fs::path bad_header = dir / "bad_header.csv";
  std::ofstream(bad_header) << "a,b,c\n";
  CHECK_THROWS_AS(load_raw_results(bad_header.string()), io::DataError);

  const fs::path short_row = dir / "short_row.csv";
  std::ofstream(short_row) << "dataset,method,repetition,fold,auc\nx,majority,0\n";
  CHECK_THROWS_AS(load_raw_results(short_row.string()), io::DataError);

  const fs::path bad_num = dir / "bad_num.csv";
  std::ofstream(bad_num) << "dataset,method,repetition,fold,auc\nx,majority,0,0,oops\n";
  CHECK_THROWS_AS(load_raw_results(bad_num.string()), io::DataError);

  const fs::path empty_file = dir / "empty.csv";
  std::ofstream(empty_file) << "";
  CHECK_THROWS_AS(load_raw_results(empty_file.string()), io::DataError);

  const fs::path no_rows = dir / "no_rows.csv";
  std::ofstream(no_rows) << "dataset,method,repetition,fold,auc\n";
  CHECK_THROWS_AS(load_raw_results(no_rows.string()), io::DataError);
}
