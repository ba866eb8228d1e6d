#include "ocen/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "ocen/evaluation.hpp"
#include "ocen/model_io.hpp"
#include "ocen/rng.hpp"
#include "ocen/version.hpp"

namespace ocen::harness {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Seed stream tags, so every consumer draws from an independent stream.
constexpr std::uint64_t kStreamPlan = 101;
constexpr std::uint64_t kStreamInner = 102;
constexpr std::uint64_t kStreamEsbe = 103;
constexpr std::uint64_t kStreamRandomBaseline = 104;
constexpr std::uint64_t kStreamSynthPos = 105;
constexpr std::uint64_t kStreamSynthNeg = 106;

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_real(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value '" + value + "' for key '" + key + "'");
  }
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value '" + value + "' for key '" + key + "'");
  }
}

char parse_delimiter(const std::string& value) {
  if (value == "tab") return '\t';
  if (value.size() != 1) {
    throw ConfigError("delimiter must be a single character or 'tab', got '" + value + "'");
  }
  return value[0];
}

ClassifierSpec parse_member_section(const std::map<std::string, std::string>& kv) {
  ClassifierSpec spec;
  auto algo_it = kv.find("algo");
  if (algo_it == kv.end()) throw ConfigError("[member] section is missing 'algo'");
  try {
    spec.algo = algo_from_name(algo_it->second);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  for (const auto& [key, value] : kv) {
    if (key == "algo") continue;
    if (key == "name") {
      spec.name = value;
    } else if (key == "p_alpha") {
      spec.p_alpha = parse_real(value, key);
    } else if (key == "k_nn") {
      spec.k_nn = static_cast<int>(parse_u64(value, key));
    } else if (key == "psi") {
      if (value == "harmonic") {
        spec.psi = PsiMean::harmonic;
      } else if (value == "geometric") {
        spec.psi = PsiMean::geometric;
      } else {
        throw ConfigError("psi must be 'harmonic' or 'geometric', got '" + value + "'");
      }
    } else if (key == "s") {
      spec.s = parse_real(value, key);
    } else if (key == "kernel") {
      if (value == "linear") {
        spec.kernel = KernelKind::linear;
      } else if (value == "polynomial") {
        spec.kernel = KernelKind::polynomial;
      } else {
        throw ConfigError("kernel must be 'linear' or 'polynomial', got '" + value + "'");
      }
    } else if (key == "degree") {
      spec.degree = static_cast<int>(parse_u64(value, key));
    } else if (key == "nu") {
      spec.nu = parse_real(value, key);
    } else {
      throw ConfigError("unknown [member] key '" + key + "'");
    }
  }
  try {
    spec.validate();
  } catch (const std::exception& e) {
    throw ConfigError("member '" + spec.display_name() + "': " + e.what());
  }
  return spec;
}

ClassifierSpec meta_spec_from_name(const std::string& name) {
  ClassifierSpec spec;
  if (name == "density_agg_hm") {
    spec.algo = Algo::density_agg;
    spec.psi = PsiMean::harmonic;
    spec.s = 0.02;
  } else if (name == "density_agg" || name == "density_agg_gm") {
    // Default meta-learner: the geometric-mean density aggregator. Unlike the
    // harmonic mean (which is dominated by the single smallest per-feature
    // mass and so collapses distinct meta-feature patterns onto tied scores),
    // the geometric mean keeps the meta response smooth.
    spec.algo = Algo::density_agg;
    spec.psi = PsiMean::geometric;
    spec.s = 0.01;
  } else if (name == "ocsvm_linear") {
    spec.algo = Algo::ocsvm;
    spec.kernel = KernelKind::linear;
    spec.nu = 0.05;
  } else if (name == "ocsvm_poly") {
    spec.algo = Algo::ocsvm;
    spec.kernel = KernelKind::polynomial;
    spec.degree = 2;
    spec.nu = 0.05;
  } else if (name == "pga") {
    spec.algo = Algo::pga;
  } else if (name == "gde") {
    spec.algo = Algo::gde;
  } else {
    throw ConfigError("unknown meta_classifier '" + name + "'");
  }
  spec.name = "meta_" + name;
  return spec;
}

struct FoldOutcome {
  // auc per method display name, in roster order; missing = NaN.
  std::vector<double> method_auc;
  std::string status = "ok";
  std::size_t n_train_pos = 0;
  std::size_t n_test = 0;
};

std::string format_cell_auc(double v) { return model_io::format_double(v); }

std::string format_fixed(double v, int decimals) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(decimals);
  os << v;
  return os.str();
}

}  // namespace

ClassifierSpec default_meta_spec() { return meta_spec_from_name("density_agg"); }

std::vector<ClassifierSpec> default_members() {
  std::vector<ClassifierSpec> members(6);
  members[0].algo = Algo::density_agg;
  members[0].name = "density_hm";
  members[0].psi = PsiMean::harmonic;
  members[0].s = 0.02;
  members[1].algo = Algo::density_agg;
  members[1].name = "density_gm";
  members[1].psi = PsiMean::geometric;
  members[1].s = 0.01;
  members[2].algo = Algo::gde;
  members[2].name = "gde";
  members[3].algo = Algo::pga;
  members[3].name = "pga";
  members[3].k_nn = 3;
  members[3].p_alpha = 0.01;
  members[4].algo = Algo::ocsvm;
  members[4].name = "svm_linear";
  members[4].kernel = KernelKind::linear;
  members[4].nu = 0.05;
  members[5].algo = Algo::ocsvm;
  members[5].name = "svm_poly";
  members[5].kernel = KernelKind::polynomial;
  members[5].degree = 2;
  members[5].nu = 0.05;
  return members;
}

std::vector<std::string> all_ensemble_names() {
  std::vector<std::string> names;
  for (FixedRule r : all_fixed_rules()) names.push_back(fixed_rule_name(r));
  names.push_back("esbe");
  names.push_back("tupso");
  names.push_back("random_baseline");
  names.push_back("actual_best");
  return names;
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  config.members = default_members();
  config.ensembles = all_ensemble_names();

  std::istringstream in(text);
  std::string line;
  std::string section;
  std::map<std::string, std::string> run_kv;
  std::vector<std::map<std::string, std::string>> dataset_kvs, member_kvs;
  std::map<std::string, std::string>* current = nullptr;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section == "run") {
        current = &run_kv;
      } else if (section == "dataset") {
        dataset_kvs.emplace_back();
        current = &dataset_kvs.back();
      } else if (section == "member") {
        member_kvs.emplace_back();
        current = &member_kvs.back();
      } else {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      }
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got '" + t + "'");
    }
    if (current == nullptr) {
      throw ConfigError("line " + std::to_string(line_no) + ": key outside any section");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (current->count(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    (*current)[key] = value;
  }

  for (const auto& [key, value] : run_kv) {
    if (key == "output_dir") {
      config.output_dir = value;
    } else if (key == "seed") {
      config.seed = parse_u64(value, key);
    } else if (key == "metric") {
      try {
        config.metric = metric_from_name(value);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "prior") {
      config.prior = parse_real(value, key);
      if (!(config.prior > 0.0 && config.prior <= 1.0)) {
        throw ConfigError("prior must be in (0, 1]");
      }
    } else if (key == "inner_k") {
      config.inner_k = parse_u64(value, key);
      if (config.inner_k < 2) throw ConfigError("inner_k must be >= 2");
    } else if (key == "meta_classifier") {
      config.meta_spec = meta_spec_from_name(value);
    } else if (key == "meta_features") {
      config.meta_features.fill(false);
      for (const std::string& f : split_csv_list(value)) {
        if (f.size() != 2 || f[0] != 'f' || f[1] < '1' || f[1] > '8') {
          throw ConfigError("meta_features entries must be f1..f8, got '" + f + "'");
        }
        config.meta_features[static_cast<std::size_t>(f[1] - '1')] = true;
      }
    } else if (key == "ensembles") {
      config.ensembles.clear();
      const auto known = all_ensemble_names();
      for (const std::string& e : split_csv_list(value)) {
        if (std::find(known.begin(), known.end(), e) == known.end()) {
          throw ConfigError("unknown ensemble '" + e + "'");
        }
        config.ensembles.push_back(e);
      }
    } else if (key == "delimiter") {
      config.delimiter = parse_delimiter(value);
    } else if (key == "missing_tokens") {
      config.missing_tokens.clear();
      for (const std::string& tok : split_csv_list(value)) config.missing_tokens.insert(tok);
    } else {
      throw ConfigError("unknown [run] key '" + key + "'");
    }
  }

  for (const auto& kv : dataset_kvs) {
    DatasetConfig ds;
    for (const auto& [key, value] : kv) {
      if (key == "name") {
        ds.name = value;
      } else if (key == "path") {
        ds.path = value;
      } else if (key == "class_column") {
        ds.class_column = value;
      } else if (key == "target_class") {
        ds.target_class = value;
      } else if (key == "delimiter") {
        ds.delimiter = parse_delimiter(value);
      } else if (key == "missing_tokens") {
        std::set<std::string> toks;
        for (const std::string& tok : split_csv_list(value)) toks.insert(tok);
        ds.missing_tokens = toks;
      } else {
        throw ConfigError("unknown [dataset] key '" + key + "'");
      }
    }
    if (ds.path.empty()) throw ConfigError("[dataset] section is missing 'path'");
    if (ds.class_column.empty()) throw ConfigError("[dataset] section is missing 'class_column'");
    if (ds.name.empty()) {
      ds.name = std::filesystem::path(ds.path).stem().string();
    }
    config.datasets.push_back(std::move(ds));
  }

  if (!member_kvs.empty()) {
    config.members.clear();
    for (const auto& kv : member_kvs) config.members.push_back(parse_member_section(kv));
  }

  if (config.datasets.empty()) throw ConfigError("config defines no [dataset] sections");
  if (config.members.empty()) throw ConfigError("config defines no members");
  {
    std::set<std::string> seen;
    for (const auto& m : config.members) {
      if (!seen.insert(m.display_name()).second) {
        throw ConfigError("duplicate member name '" + m.display_name() + "'");
      }
    }
    std::set<std::string> ds_seen;
    for (const auto& d : config.datasets) {
      if (!ds_seen.insert(d.name).second) {
        throw ConfigError("duplicate dataset name '" + d.name + "'");
      }
    }
  }
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::vector<std::string> EvaluationReport::all_methods() const {
  std::vector<std::string> out = members;
  out.insert(out.end(), ensembles.begin(), ensembles.end());
  return out;
}

std::vector<std::vector<double>> EvaluationReport::mean_table(
    const std::vector<std::string>& methods) const {
  std::vector<std::vector<double>> table(datasets.size(),
                                         std::vector<double>(methods.size(), kNaN));
  std::vector<std::vector<std::size_t>> counts(datasets.size(),
                                               std::vector<std::size_t>(methods.size(), 0));
  for (const auto& cell : cells) {
    const auto di = std::find(datasets.begin(), datasets.end(), cell.dataset);
    const auto mi = std::find(methods.begin(), methods.end(), cell.method);
    if (di == datasets.end() || mi == methods.end()) continue;
    const std::size_t d = static_cast<std::size_t>(di - datasets.begin());
    const std::size_t m = static_cast<std::size_t>(mi - methods.begin());
    if (counts[d][m] == 0) table[d][m] = 0.0;
    table[d][m] += cell.auc_value;
    ++counts[d][m];
  }
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    for (std::size_t m = 0; m < methods.size(); ++m) {
      if (counts[d][m] > 0) table[d][m] /= static_cast<double>(counts[d][m]);
    }
  }
  return table;
}

bool EvaluationReport::complete() const {
  const std::size_t expected = datasets.size() * (members.size() + ensembles.size()) * 10;
  return cells.size() == expected && failures.empty();
}

namespace {

// Runs one (repetition, fold) execution for one dataset. Throws on failure;
// the caller records the failure and marks the cells missing.
FoldOutcome run_fold(const ExperimentConfig& config, const io::RawTable& table,
                     const std::string& ds_name, std::size_t ds_index,
                     const io::FoldSplit& split, int rep, int fold) {
  FoldOutcome out;
  const std::vector<std::string> ensembles = config.ensembles;

  std::vector<std::size_t> train_pos_rows;
  for (std::size_t r : split.train) {
    if (table.is_positive_row(r)) train_pos_rows.push_back(r);
  }
  if (train_pos_rows.size() < 4) {
    throw std::runtime_error("fewer than 4 training positives");
  }
  const io::Encoder enc = io::Encoder::fit(table, train_pos_rows);
  const Dataset train_ds = enc.transform(table, ds_name + ":train", train_pos_rows);
  const Dataset test_ds = enc.transform(table, ds_name + ":test", split.test);
  const PositivesView train_view = PositivesView::of(train_ds);
  out.n_train_pos = train_view.size();
  out.n_test = test_ds.size();

  std::vector<int> test_labels;
  test_labels.reserve(test_ds.size());
  for (const auto& inst : test_ds.instances) {
    test_labels.push_back(inst.label == Label::positive ? 1 : 0);
  }

  const std::uint64_t inner_seed =
      mix_seed(config.seed, kStreamInner, ds_index, static_cast<std::uint64_t>(rep * 2 + fold));
  const std::uint64_t esbe_seed =
      mix_seed(config.seed, kStreamEsbe, ds_index, static_cast<std::uint64_t>(rep * 2 + fold));

  // Full-data member models, shared by the fixed rules and the ensembles.
  std::vector<TrainedClassifier> member_models;
  for (const auto& spec : config.members) member_models.push_back(train(spec, train_view));

  // member_scores[j][t] = member j's score on test instance t.
  std::vector<std::vector<double>> member_scores(member_models.size());
  for (std::size_t j = 0; j < member_models.size(); ++j) {
    member_scores[j].reserve(test_ds.size());
    for (const auto& inst : test_ds.instances) {
      member_scores[j].push_back(member_models[j].score(inst.features).value);
    }
  }

  const std::size_t k_inner = std::min<std::size_t>(config.inner_k, train_view.size());
  const bool need_inner =
      std::find(ensembles.begin(), ensembles.end(), "tupso") != ensembles.end() ||
      std::find(ensembles.begin(), ensembles.end(), "weighted_mean_vote") != ensembles.end() ||
      std::find(ensembles.begin(), ensembles.end(), "weighted_vote_product") != ensembles.end();

  std::vector<double> f_t(member_models.size(), 1.0);
  std::vector<double> alpha(member_models.size(),
                            1.0 / static_cast<double>(member_models.size()));
  std::optional<InnerCvResult> inner;
  if (need_inner) {
    inner = run_inner_cv(config.members, train_view, k_inner, inner_seed);
    f_t = inner->acceptance_rate;
    std::vector<PerformanceEstimate> ests;
    for (std::size_t j = 0; j < member_models.size(); ++j) {
      ests.push_back(estimate_from_rates(config.metric, config.prior,
                                         1.0 - inner->acceptance_rate[j], std::nullopt));
    }
    alpha = compute_weights(ests);
  }

  out.method_auc.assign(config.members.size() + ensembles.size(), kNaN);

  for (std::size_t j = 0; j < member_models.size(); ++j) {
    out.method_auc[j] = auc(member_scores[j], test_labels);
  }

  std::vector<double> thetas(member_models.size());
  for (std::size_t j = 0; j < member_models.size(); ++j) {
    thetas[j] = member_models[j].theta().theta;
  }

  for (std::size_t e = 0; e < ensembles.size(); ++e) {
    const std::string& name = ensembles[e];
    const std::size_t slot = config.members.size() + e;
    if (name == "random_baseline" || name == "actual_best") continue;  // post-pass
    if (name == "esbe") {
      const EsbeModel esbe = train_esbe(config.members, train_view, config.metric,
                                        config.prior, esbe_seed);
      out.method_auc[slot] = auc(member_scores[esbe.dominant], test_labels);
      continue;
    }
    if (name == "tupso") {
      TupsoModel tupso = train_tupso(config.members, train_view, k_inner, config.metric,
                                     config.prior, config.meta_spec, config.meta_features,
                                     inner_seed);
      std::vector<double> scores;
      scores.reserve(test_ds.size());
      std::vector<double> row(member_models.size());
      for (std::size_t t = 0; t < test_ds.size(); ++t) {
        for (std::size_t j = 0; j < member_models.size(); ++j) {
          row[j] = member_scores[j][t];
        }
        scores.push_back(tupso.meta.score(tupso.meta_input(row)).value);
      }
      out.method_auc[slot] = auc(scores, test_labels);
      continue;
    }
    const FixedRule rule = fixed_rule_from_name(name);
    std::vector<double> scores;
    scores.reserve(test_ds.size());
    MemberOutputs mo;
    mo.thetas = thetas;
    mo.f_t = f_t;
    mo.scores.resize(member_models.size());
    for (std::size_t t = 0; t < test_ds.size(); ++t) {
      for (std::size_t j = 0; j < member_models.size(); ++j) {
        mo.scores[j] = member_scores[j][t];
      }
      scores.push_back(combine_fixed(rule, mo));
    }
    out.method_auc[slot] = auc(scores, test_labels);
  }
  return out;
}

}  // namespace

EvaluationReport run_experiment(const ExperimentConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  EvaluationReport report;
  report.seed = config.seed;
  report.metric = metric_name(config.metric);
  report.prior = config.prior;
  report.inner_k = config.inner_k;
  report.ensembles = config.ensembles;
  for (const auto& m : config.members) report.members.push_back(m.display_name());

  for (std::size_t d = 0; d < config.datasets.size(); ++d) {
    const DatasetConfig& ds_cfg = config.datasets[d];
    io::RawTable table;
    try {
      io::LoadOptions opts;
      opts.delimiter = ds_cfg.delimiter.value_or(config.delimiter);
      opts.missing_tokens = ds_cfg.missing_tokens.value_or(config.missing_tokens);
      table = io::binarize(io::load_csv(ds_cfg.path, ds_cfg.class_column, opts),
                           ds_cfg.target_class);
    } catch (const std::exception& e) {
      report.failures.push_back("dataset '" + ds_cfg.name + "': " + e.what());
      continue;
    }
    report.datasets.push_back(ds_cfg.name);

    io::CVPlan plan;
    try {
      plan = io::make_5x2_plan(table.rows(), mix_seed(config.seed, kStreamPlan, d));
    } catch (const std::exception& e) {
      report.failures.push_back("dataset '" + ds_cfg.name + "': " + e.what());
      continue;
    }

    // fold_auc[rep*2+fold][method slot]
    std::vector<std::vector<double>> fold_auc(
        10, std::vector<double>(config.members.size() + config.ensembles.size(), kNaN));
    const auto splits = plan.splits();
    for (std::size_t s = 0; s < splits.size(); ++s) {
      const int rep = static_cast<int>(s / 2), fold = static_cast<int>(s % 2);
      FoldLogEntry log;
      log.dataset = ds_cfg.name;
      log.repetition = rep;
      log.fold = fold;
      try {
        FoldOutcome outcome = run_fold(config, table, ds_cfg.name, d, splits[s], rep, fold);
        fold_auc[s] = outcome.method_auc;
        log.n_train_positives = outcome.n_train_pos;
        log.n_test = outcome.n_test;
        log.status = outcome.status;
      } catch (const std::exception& e) {
        log.status = e.what();
        report.failures.push_back("dataset '" + ds_cfg.name + "' rep " +
                                  std::to_string(rep) + " fold " + std::to_string(fold) +
                                  ": " + e.what());
      }
      report.fold_log.push_back(std::move(log));
    }

    // Baselines: actual_best copies the member with the best mean AUC over
    // the dataset; random_baseline copies a seed-chosen member.
    const auto ens_slot = [&](const std::string& name) -> std::ptrdiff_t {
      const auto it = std::find(config.ensembles.begin(), config.ensembles.end(), name);
      if (it == config.ensembles.end()) return -1;
      return static_cast<std::ptrdiff_t>(config.members.size() +
                                         (it - config.ensembles.begin()));
    };
    const std::ptrdiff_t best_slot = ens_slot("actual_best");
    if (best_slot >= 0) {
      double best_mean = -1.0;
      std::size_t best_j = 0;
      for (std::size_t j = 0; j < config.members.size(); ++j) {
        double sum = 0.0;
        std::size_t cnt = 0;
        for (std::size_t s = 0; s < 10; ++s) {
          if (!std::isnan(fold_auc[s][j])) {
            sum += fold_auc[s][j];
            ++cnt;
          }
        }
        if (cnt > 0 && sum / static_cast<double>(cnt) > best_mean) {
          best_mean = sum / static_cast<double>(cnt);
          best_j = j;
        }
      }
      if (best_mean >= 0.0) {
        for (std::size_t s = 0; s < 10; ++s) {
          fold_auc[s][static_cast<std::size_t>(best_slot)] = fold_auc[s][best_j];
        }
      }
    }
    const std::ptrdiff_t random_slot = ens_slot("random_baseline");
    if (random_slot >= 0) {
      Rng rng(mix_seed(config.seed, kStreamRandomBaseline, d));
      const std::size_t pick = static_cast<std::size_t>(rng.bounded(config.members.size()));
      for (std::size_t s = 0; s < 10; ++s) {
        fold_auc[s][static_cast<std::size_t>(random_slot)] = fold_auc[s][pick];
      }
    }

    const auto methods = report.all_methods();
    for (std::size_t m = 0; m < methods.size(); ++m) {
      for (std::size_t s = 0; s < 10; ++s) {
        if (std::isnan(fold_auc[s][m])) continue;
        RawCell cell;
        cell.dataset = ds_cfg.name;
        cell.method = methods[m];
        cell.repetition = static_cast<int>(s / 2);
        cell.fold = static_cast<int>(s % 2);
        cell.auc_value = fold_auc[s][m];
        report.cells.push_back(std::move(cell));
      }
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return report;
}

namespace {

void write_table_file(const std::string& path, const std::string& title,
                      const EvaluationReport& report,
                      const std::vector<std::string>& methods) {
  std::ofstream os(path);
  if (!os) throw io::DataError("cannot write '" + path + "'");
  const auto table = report.mean_table(methods);
  os << "# " << title << "\n";
  os << "# pipeline: binarize to the two most frequent classes; per fold, fit the\n"
        "# encoder (one-hot + median impute + min-max to [0,1]) on the training\n"
        "# positives only; train members on training positives; score the full test\n"
        "# fold; AUC per (repetition, fold); cells are the mean over the 10 folds.\n";
  os << "# metric=" << report.metric << " prior=" << format_fixed(report.prior, 4)
     << " seed=" << report.seed << " inner_k=" << report.inner_k
     << " version=" << version_string << "\n\n";

  os << "dataset";
  for (const auto& m : methods) os << " | " << m;
  os << "\n";
  for (std::size_t d = 0; d < report.datasets.size(); ++d) {
    os << report.datasets[d];
    const auto ranks = display_ranks(table[d]);
    for (std::size_t m = 0; m < methods.size(); ++m) {
      if (std::isnan(table[d][m])) {
        os << " | n/a";
      } else {
        os << " | " << format_fixed(table[d][m], 4) << " (" << ranks[m] << ")";
      }
    }
    os << "\n";
  }
  if (!report.datasets.empty()) {
    const RankMatrix rm = rank_rows(table);
    os << "Average Rank";
    for (std::size_t m = 0; m < methods.size(); ++m) {
      if (std::isnan(rm.average_rank[m])) {
        os << " | n/a";
      } else {
        os << " | " << format_fixed(rm.average_rank[m], 3);
      }
    }
    os << "\n";
    os << "Mean AUC";
    for (std::size_t m = 0; m < methods.size(); ++m) {
      double sum = 0.0;
      std::size_t cnt = 0;
      for (std::size_t d = 0; d < report.datasets.size(); ++d) {
        if (!std::isnan(table[d][m])) {
          sum += table[d][m];
          ++cnt;
        }
      }
      if (cnt == 0) {
        os << " | n/a";
      } else {
        os << " | " << format_fixed(sum / static_cast<double>(cnt), 4);
      }
    }
    os << "\n";
  }
}

void write_entropy_block(std::ostream& os, const std::string& title,
                         const EvaluationReport& report,
                         const std::vector<std::string>& methods) {
  const auto table = report.mean_table(methods);
  const std::size_t k = methods.size();
  std::vector<std::vector<double>> counts(k, std::vector<double>(k, 0.0));
  for (std::size_t d = 0; d < report.datasets.size(); ++d) {
    const auto ranks = display_ranks(table[d]);
    for (std::size_t m = 0; m < k; ++m) {
      if (ranks[m] >= 1) counts[m][static_cast<std::size_t>(ranks[m] - 1)] += 1.0;
    }
  }
  os << title << " (rows: method; columns: times ranked 1.." << k << ")\n";
  bool any = false;
  for (const auto& row : counts) {
    for (double c : row) any = any || c > 0.0;
  }
  if (!any) {
    os << "  n/a (no ranked cells)\n\n";
    return;
  }
  const RankEntropy ent = rank_entropy(counts);
  for (std::size_t m = 0; m < k; ++m) {
    os << "  " << methods[m] << ":";
    for (std::size_t r = 0; r < k; ++r) {
      os << " " << static_cast<long long>(counts[m][r]);
    }
    if (std::isnan(ent.per_method[m])) {
      os << "  entropy=n/a\n";
    } else {
      os << "  entropy=" << format_fixed(ent.per_method[m], 3) << "\n";
    }
  }
  os << "  per-rank entropy:";
  for (std::size_t r = 0; r < k; ++r) {
    if (std::isnan(ent.per_rank[r])) {
      os << " n/a";
    } else {
      os << " " << format_fixed(ent.per_rank[r], 3);
    }
  }
  const double max_entropy = std::log2(static_cast<double>(k));
  os << "\n  maximal possible entropy: " << format_fixed(max_entropy, 3) << "\n\n";
}

void write_friedman_block(std::ostream& os, const std::string& title,
                          const EvaluationReport& report,
                          const std::vector<std::string>& methods) {
  os << title << "\n";
  const auto table = report.mean_table(methods);
  try {
    const RankMatrix rm = rank_rows(table);
    const FriedmanResult fr = friedman_test(rm);
    os << "  chi2=" << format_fixed(fr.chi2, 6) << " F=" ;
    if (fr.saturated) {
      os << "inf (saturated: chi2 at its maximum; p reported as 0)";
    } else {
      os << format_fixed(fr.statistic, 6);
    }
    os << " df=(" << (fr.k - 1) << "," << (fr.k - 1) * (fr.n_rows - 1) << ")"
       << " p=" << format_fixed(fr.p_value, 6)
       << (fr.reject_at_05 ? "  [reject at 0.05]" : "  [no rejection at 0.05]") << "\n";
  } catch (const std::exception& e) {
    os << "  n/a (" << e.what() << ")\n";
  }
  os << "\n";
}

void write_bd_block(std::ostream& os, const EvaluationReport& report,
                    const std::vector<std::string>& methods, const std::string& control) {
  const auto it = std::find(methods.begin(), methods.end(), control);
  if (it == methods.end()) return;
  os << "Bonferroni-Dunn, control = " << control << "\n";
  try {
    const auto table = report.mean_table(methods);
    const RankMatrix rm = rank_rows(table);
    const BonferroniDunnResult bd =
        bonferroni_dunn(rm, static_cast<std::size_t>(it - methods.begin()));
    os << "  adjusted alpha = " << format_fixed(bd.adjusted_alpha, 6) << "\n";
    for (std::size_t j = 0; j < methods.size(); ++j) {
      if (j == bd.control) continue;
      os << "  vs " << methods[j] << ": z=" << format_fixed(bd.z[j], 4)
         << " p=" << format_fixed(bd.p_value[j], 6)
         << (bd.significant[j] ? "  [significant]" : "") << "\n";
    }
  } catch (const std::exception& e) {
    os << "  n/a (" << e.what() << ")\n";
  }
  os << "\n";
}

void write_stats_summary(const std::string& path, const EvaluationReport& report) {
  std::ofstream os(path);
  if (!os) throw io::DataError("cannot write '" + path + "'");
  os << "# statistical summary\n";
  os << "# metric=" << report.metric << " seed=" << report.seed
     << " version=" << version_string << "\n\n";

  write_friedman_block(os, "Friedman test over members", report, report.members);
  write_friedman_block(os, "Friedman test over ensembles", report, report.ensembles);
  write_bd_block(os, report, report.ensembles, "tupso");
  write_bd_block(os, report, report.ensembles, "actual_best");
  write_entropy_block(os, "Rank histogram over members", report, report.members);
  write_entropy_block(os, "Rank histogram over ensembles", report, report.ensembles);

  // Pearson correlation of every method's per-dataset AUC against the
  // actual-best baseline.
  const auto methods = report.all_methods();
  const auto it = std::find(methods.begin(), methods.end(), std::string("actual_best"));
  os << "Pearson correlation vs actual_best (per-dataset mean AUC)\n";
  if (it == methods.end()) {
    os << "  n/a (actual_best not in the method roster)\n";
    return;
  }
  const auto table = report.mean_table(methods);
  const std::size_t best_col = static_cast<std::size_t>(it - methods.begin());
  for (std::size_t m = 0; m < methods.size(); ++m) {
    if (m == best_col) continue;
    std::vector<double> x, y;
    for (std::size_t d = 0; d < report.datasets.size(); ++d) {
      if (!std::isnan(table[d][m]) && !std::isnan(table[d][best_col])) {
        x.push_back(table[d][m]);
        y.push_back(table[d][best_col]);
      }
    }
    os << "  " << methods[m] << ": ";
    try {
      os << format_fixed(pearson(x, y), 4) << "\n";
    } catch (const std::exception&) {
      os << "n/a\n";
    }
  }
}

}  // namespace

void emit_reports(const EvaluationReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto path = [&dir](const char* name) {
    return (std::filesystem::path(dir) / name).string();
  };

  {
    std::ofstream os(path("raw_results.csv"));
    if (!os) throw io::DataError("cannot write raw_results.csv in '" + dir + "'");
    os << "dataset,method,repetition,fold,auc\n";
    for (const auto& cell : report.cells) {
      os << cell.dataset << ',' << cell.method << ',' << cell.repetition << ','
         << cell.fold << ',' << format_cell_auc(cell.auc_value) << '\n';
    }
  }

  write_table_file(path("members_table.txt"), "per-dataset AUC of the base members",
                   report, report.members);
  write_table_file(path("ensembles_table.txt"), "per-dataset AUC of the ensembles",
                   report, report.ensembles);
  write_stats_summary(path("stats_summary.txt"), report);

  {
    std::ofstream os(path("run_log.txt"));
    if (!os) throw io::DataError("cannot write run_log.txt in '" + dir + "'");
    os << "run log\n";
    os << "seed=" << report.seed << " metric=" << report.metric
       << " prior=" << format_fixed(report.prior, 4) << " inner_k=" << report.inner_k
       << " version=" << version_string << "\n";
    os << "wall_seconds=" << format_fixed(report.wall_seconds, 3) << "\n";
    for (const auto& entry : report.fold_log) {
      os << entry.dataset << " rep=" << entry.repetition << " fold=" << entry.fold
         << " train_positives=" << entry.n_train_positives << " test=" << entry.n_test
         << " status=" << entry.status << "\n";
    }
    for (const auto& f : report.failures) os << "failure: " << f << "\n";
  }
}

EvaluationReport load_raw_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::DataError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw io::DataError("'" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "dataset,method,repetition,fold,auc") {
    throw io::DataError("'" + path + "' is not a raw results file (bad header)");
  }
  EvaluationReport report;
  const auto known_ensembles = all_ensemble_names();
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto parts = split_csv_list(line);
    if (parts.size() != 5) {
      throw io::DataError(path + ": row " + std::to_string(row_no) + " has " +
                          std::to_string(parts.size()) + " fields, expected 5");
    }
    RawCell cell;
    cell.dataset = parts[0];
    cell.method = parts[1];
    try {
      cell.repetition = static_cast<int>(std::stol(parts[2]));
      cell.fold = static_cast<int>(std::stol(parts[3]));
      cell.auc_value = std::stod(parts[4]);
    } catch (const std::exception&) {
      throw io::DataError(path + ": row " + std::to_string(row_no) + " has bad numbers");
    }
    if (std::find(report.datasets.begin(), report.datasets.end(), cell.dataset) ==
        report.datasets.end()) {
      report.datasets.push_back(cell.dataset);
    }
    const bool is_ensemble = std::find(known_ensembles.begin(), known_ensembles.end(),
                                       cell.method) != known_ensembles.end();
    auto& bucket = is_ensemble ? report.ensembles : report.members;
    if (std::find(bucket.begin(), bucket.end(), cell.method) == bucket.end()) {
      bucket.push_back(cell.method);
    }
    report.cells.push_back(std::move(cell));
  }
  if (report.cells.empty()) throw io::DataError("'" + path + "' has no result rows");
  report.metric = "unknown";
  return report;
}

void gen_synthetic(SynthKind kind, std::size_t n_pos, std::size_t n_neg, std::size_t dim,
                   double separation, std::uint64_t seed, const std::string& out_path) {
  if (n_pos < 10 || n_neg < 10) {
    throw std::invalid_argument("synthetic datasets require n_pos, n_neg >= 10");
  }
  if (dim < 1) throw std::invalid_argument("synthetic datasets require dim >= 1");
  if (separation < 0.0) throw std::invalid_argument("separation must be >= 0");

  std::ofstream os(out_path);
  if (!os) throw io::DataError("cannot write '" + out_path + "'");
  for (std::size_t j = 0; j < dim; ++j) os << 'f' << (j + 1) << ',';
  os << "class\n";

  Rng pos_rng(mix_seed(seed, kStreamSynthPos));
  for (std::size_t i = 0; i < n_pos; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      os << model_io::format_double(pos_rng.normal()) << ',';
    }
    os << "A\n";
  }
  Rng neg_rng(mix_seed(seed, kStreamSynthNeg));
  for (std::size_t i = 0; i < n_neg; ++i) {
    std::vector<double> x(dim);
    if (kind == SynthKind::two_gaussian) {
      // Offset toward the low corner of the positives' encoded range.
      for (std::size_t j = 0; j < dim; ++j) x[j] = neg_rng.normal() - separation;
    } else {
      double norm = 0.0;
      do {
        for (std::size_t j = 0; j < dim; ++j) x[j] = neg_rng.normal();
        norm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
      } while (norm == 0.0);
      for (std::size_t j = 0; j < dim; ++j) x[j] = x[j] / norm * separation;
    }
    for (std::size_t j = 0; j < dim; ++j) os << model_io::format_double(x[j]) << ',';
    os << "B\n";
  }
}

}  // namespace ocen::harness
