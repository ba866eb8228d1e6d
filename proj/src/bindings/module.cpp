// Python bindings for the ocen core. The module mirrors the C++ API closely:
// value structs become classes with plain attributes, enums map one-to-one,
// and every function that trains on positives accepts a Dataset and selects
// its positive instances internally (so no view lifetimes cross the language
// boundary). Scores unwrap to plain floats.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ocen/classifiers.hpp"
#include "ocen/combiners.hpp"
#include "ocen/data.hpp"
#include "ocen/dataset_io.hpp"
#include "ocen/estimation.hpp"
#include "ocen/evaluation.hpp"
#include "ocen/harness.hpp"
#include "ocen/version.hpp"

namespace py = pybind11;
using namespace ocen;

namespace {

const char* label_to_string(Label l) {
  switch (l) {
    case Label::positive: return "positive";
    case Label::negative: return "negative";
    default: return "unlabeled";
  }
}

Label label_from_string(const std::string& s) {
  if (s == "positive") return Label::positive;
  if (s == "negative") return Label::negative;
  if (s == "unlabeled") return Label::unlabeled;
  throw std::invalid_argument("unknown label '" + s +
                              "' (expected positive, negative, or unlabeled)");
}

Dataset make_dataset(std::string name, std::vector<std::string> feature_names,
                     const std::vector<std::vector<double>>& rows,
                     const std::vector<std::string>& labels) {
  if (rows.size() != labels.size()) {
    throw std::invalid_argument("rows and labels differ in length");
  }
  Dataset ds;
  ds.name = std::move(name);
  ds.feature_names = std::move(feature_names);
  ds.instances.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ds.instances.push_back({rows[i], label_from_string(labels[i])});
  }
  ds.validate();
  return ds;
}

harness::SynthKind synth_kind_from_name(const std::string& kind) {
  if (kind == "two-gaussian") return harness::SynthKind::two_gaussian;
  if (kind == "uniform-ring") return harness::SynthKind::uniform_ring;
  throw std::invalid_argument("unknown synthetic kind '" + kind +
                              "' (expected two-gaussian or uniform-ring)");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "One-class ensemble toolkit: base detectors, fixed combining rules, "
            "stacked meta-learning, and evaluation utilities.";
  m.attr("__version__") = version_string;

  py::register_exception<harness::ConfigError>(m, "ConfigError", PyExc_RuntimeError);
  py::register_exception<io::DataError>(m, "DataError", PyExc_RuntimeError);

  // ---- data model ----------------------------------------------------------

  py::enum_<Label>(m, "Label")
      .value("positive", Label::positive)
      .value("negative", Label::negative)
      .value("unlabeled", Label::unlabeled);

  py::class_<Instance>(m, "Instance")
      .def(py::init<>())
      .def(py::init([](std::vector<double> features, Label label) {
             return Instance{std::move(features), label};
           }),
           py::arg("features"), py::arg("label") = Label::unlabeled)
      .def_readwrite("features", &Instance::features)
      .def_readwrite("label", &Instance::label);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init<>())
      .def(py::init(&make_dataset), py::arg("name"), py::arg("feature_names"),
           py::arg("rows"), py::arg("labels"),
           "Build and validate a dataset from rows and per-row label names "
           "('positive' | 'negative' | 'unlabeled').")
      .def_readwrite("name", &Dataset::name)
      .def_readwrite("feature_names", &Dataset::feature_names)
      .def_readwrite("instances", &Dataset::instances)
      .def("size", &Dataset::size)
      .def("dim", &Dataset::dim)
      .def("validate", &Dataset::validate)
      .def("rows",
           [](const Dataset& d) {
             std::vector<std::vector<double>> rows;
             rows.reserve(d.instances.size());
             for (const auto& inst : d.instances) rows.push_back(inst.features);
             return rows;
           })
      .def("labels",
           [](const Dataset& d) {
             std::vector<std::string> labels;
             labels.reserve(d.instances.size());
             for (const auto& inst : d.instances) {
               labels.emplace_back(label_to_string(inst.label));
             }
             return labels;
           })
      .def("__len__", &Dataset::size)
      .def("__repr__", [](const Dataset& d) {
        std::ostringstream os;
        os << "Dataset(name='" << d.name << "', n=" << d.size() << ", dim=" << d.dim()
           << ")";
        return os.str();
      });

  m.def("score_to_vote", py::overload_cast<double, double>(&score_to_vote),
        py::arg("score"), py::arg("theta"),
        "Indicator I(score >= theta); the boundary is inclusive.");

  // ---- classifiers ---------------------------------------------------------

  py::enum_<Algo>(m, "Algo")
      .value("pga", Algo::pga)
      .value("gde", Algo::gde)
      .value("density_agg", Algo::density_agg)
      .value("ocsvm", Algo::ocsvm);

  py::enum_<PsiMean>(m, "PsiMean")
      .value("harmonic", PsiMean::harmonic)
      .value("geometric", PsiMean::geometric);

  py::enum_<KernelKind>(m, "KernelKind")
      .value("linear", KernelKind::linear)
      .value("polynomial", KernelKind::polynomial);

  m.def("algo_name", &algo_name, py::arg("algo"));
  m.def("algo_from_name", &algo_from_name, py::arg("name"));

  py::class_<ClassifierSpec>(m, "ClassifierSpec")
      .def(py::init<>())
      .def_readwrite("algo", &ClassifierSpec::algo)
      .def_readwrite("name", &ClassifierSpec::name)
      .def_readwrite("p_alpha", &ClassifierSpec::p_alpha)
      .def_readwrite("k_nn", &ClassifierSpec::k_nn)
      .def_readwrite("psi", &ClassifierSpec::psi)
      .def_readwrite("s", &ClassifierSpec::s)
      .def_readwrite("kernel", &ClassifierSpec::kernel)
      .def_readwrite("degree", &ClassifierSpec::degree)
      .def_readwrite("nu", &ClassifierSpec::nu)
      .def("validate", &ClassifierSpec::validate)
      .def("display_name", &ClassifierSpec::display_name)
      .def("__repr__", [](const ClassifierSpec& s) {
        return "ClassifierSpec(algo=" + algo_name(s.algo) + ", name='" +
               s.display_name() + "')";
      });

  py::class_<TrainedClassifier>(m, "TrainedClassifier")
      .def_property_readonly("algo", &TrainedClassifier::algo)
      .def_property_readonly("name",
                             [](const TrainedClassifier& c) { return c.name(); })
      .def_property_readonly("theta",
                             [](const TrainedClassifier& c) { return c.theta().theta; })
      .def_property_readonly("convergence_warning",
                             &TrainedClassifier::convergence_warning)
      .def("dim", &TrainedClassifier::dim)
      .def("score",
           [](const TrainedClassifier& c, const std::vector<double>& x) {
             return c.score(x).value;
           },
           py::arg("x"))
      .def("predict", &TrainedClassifier::predict, py::arg("x"))
      .def("to_text", &TrainedClassifier::to_text)
      .def_static("from_text", &TrainedClassifier::from_text, py::arg("text"))
      .def("__repr__", [](const TrainedClassifier& c) {
        return "TrainedClassifier(algo=" + algo_name(c.algo()) + ", name='" + c.name() +
               "')";
      });

  m.def("train",
        [](const ClassifierSpec& spec, const Dataset& positives) {
          return train(spec, PositivesView::of(positives));
        },
        py::arg("spec"), py::arg("positives"),
        "Train spec on the positive instances of the dataset.");
  m.def("ocsvm_dual_objective", &ocsvm_dual_objective, py::arg("model"),
        "Dual objective (1/2) a^T K a of a fitted SVM, for diagnostics.");

  // ---- cross-validation plans ----------------------------------------------

  py::class_<io::FoldSplit>(m, "FoldSplit")
      .def(py::init<>())
      .def(py::init([](std::vector<std::size_t> train, std::vector<std::size_t> test) {
             return io::FoldSplit{std::move(train), std::move(test)};
           }),
           py::arg("train"), py::arg("test"))
      .def_readwrite("train", &io::FoldSplit::train)
      .def_readwrite("test", &io::FoldSplit::test);

  py::class_<io::CVPlan>(m, "CVPlan")
      .def_readonly("seed", &io::CVPlan::seed)
      .def("splits", &io::CVPlan::splits,
           "The 10 (train, test) executions: per repetition, (A,B) then (B,A).");

  m.def("make_5x2_plan", &io::make_5x2_plan, py::arg("n"), py::arg("seed"),
        "Dietterich 5x2 plan: five seeded shuffles, each halved into folds.");
  m.def("make_kfold_plan", &io::make_kfold_plan, py::arg("indices"), py::arg("k"),
        py::arg("seed"),
        "k disjoint holdouts over the given indices, sizes differing by at most one.");

  m.def("load_dataset",
        [](const std::string& path, const std::string& class_column,
           const std::string& target_class, char delimiter,
           std::optional<std::set<std::string>> missing_tokens) {
          io::LoadOptions options;
          options.delimiter = delimiter;
          if (missing_tokens) options.missing_tokens = std::move(*missing_tokens);
          auto table = io::binarize(io::load_csv(path, class_column, options),
                                    target_class);
          std::string name = path;
          if (auto slash = name.find_last_of("/\\"); slash != std::string::npos) {
            name = name.substr(slash + 1);
          }
          if (auto dot = name.find_last_of('.'); dot != std::string::npos) {
            name = name.substr(0, dot);
          }
          return io::encode_and_normalize(table, name).first;
        },
        py::arg("path"), py::arg("class_column"), py::arg("target_class") = "",
        py::arg("delimiter") = ',', py::arg("missing_tokens") = std::nullopt,
        "Load a CSV, binarize the class column, and one-hot/min-max encode it "
        "(encoder fitted on the positive rows).");

  // ---- estimation ----------------------------------------------------------

  py::enum_<Metric>(m, "Metric").value("oca", Metric::oca).value("ocf", Metric::ocf);

  m.def("metric_name", &metric_name, py::arg("metric"));
  m.def("metric_from_name", &metric_from_name, py::arg("name"));

  py::class_<PerformanceEstimate>(m, "PerformanceEstimate")
      .def(py::init<>())
      .def_readwrite("metric", &PerformanceEstimate::metric)
      .def_readwrite("value", &PerformanceEstimate::value)
      .def_readwrite("p1", &PerformanceEstimate::p1)
      .def_readwrite("fnr", &PerformanceEstimate::fnr)
      .def_readwrite("tpr", &PerformanceEstimate::tpr)
      .def_readwrite("prior", &PerformanceEstimate::prior)
      .def("__repr__", [](const PerformanceEstimate& e) {
        std::ostringstream os;
        os << "PerformanceEstimate(metric=" << metric_name(e.metric)
           << ", value=" << e.value << ", p1=" << e.p1 << ", fnr=" << e.fnr << ")";
        return os.str();
      });

  m.def("estimate_from_rates", &estimate_from_rates, py::arg("metric"),
        py::arg("prior"), py::arg("fnr"), py::arg("p1_unlabeled") = std::nullopt,
        "Assemble an estimate from measured rates; without an unlabeled estimate "
        "p1 falls back to tpr and OCF reduces to tpr exactly.");

  m.def("estimate_member_performance",
        [](const ClassifierSpec& spec, const Dataset& positives, Metric metric,
           double prior, const std::vector<io::FoldSplit>& plan,
           const std::optional<Dataset>& unlabeled) {
          return estimate_member_performance(spec, PositivesView::of(positives), metric,
                                             prior, plan,
                                             unlabeled ? &*unlabeled : nullptr);
        },
        py::arg("spec"), py::arg("positives"), py::arg("metric"), py::arg("prior"),
        py::arg("plan"), py::arg("unlabeled") = std::nullopt,
        "Cross-validated positives-only estimate; fnr pools all holdout votes.");

  m.def("compute_weights",
        py::overload_cast<const std::vector<double>&>(&compute_weights),
        py::arg("perfs"),
        "alpha_i = perf_i / sum(perf); an all-zero input yields uniform weights.");
  m.def("compute_weights",
        py::overload_cast<const std::vector<PerformanceEstimate>&>(&compute_weights),
        py::arg("perfs"));

  // ---- combiners -----------------------------------------------------------

  py::enum_<FixedRule>(m, "FixedRule")
      .value("majority", FixedRule::majority)
      .value("mean_vote", FixedRule::mean_vote)
      .value("weighted_mean_vote", FixedRule::weighted_mean_vote)
      .value("average", FixedRule::average)
      .value("max", FixedRule::max)
      .value("product", FixedRule::product)
      .value("exclusive", FixedRule::exclusive)
      .value("weighted_vote_product", FixedRule::weighted_vote_product);

  m.def("fixed_rule_name", &fixed_rule_name, py::arg("rule"));
  m.def("fixed_rule_from_name", &fixed_rule_from_name, py::arg("name"));
  m.def("all_fixed_rules", &all_fixed_rules);

  py::class_<MemberOutputs>(m, "MemberOutputs")
      .def(py::init<>())
      .def(py::init([](std::vector<double> scores, std::vector<double> thetas,
                       std::vector<double> f_t) {
             return MemberOutputs{std::move(scores), std::move(thetas), std::move(f_t)};
           }),
           py::arg("scores"), py::arg("thetas"),
           py::arg("f_t") = std::vector<double>{})
      .def_readwrite("scores", &MemberOutputs::scores)
      .def_readwrite("thetas", &MemberOutputs::thetas)
      .def_readwrite("f_t", &MemberOutputs::f_t);

  m.def("combine_fixed", &combine_fixed, py::arg("rule"), py::arg("outputs"),
        "Evaluate one fixed rule; result clamped to [0, 1]. Weighted rules "
        "require f_t.");
  m.def("combine_fixed",
        [](const std::string& rule, std::vector<double> scores,
           std::vector<double> thetas, std::vector<double> f_t) {
          return combine_fixed(fixed_rule_from_name(rule),
                               {std::move(scores), std::move(thetas), std::move(f_t)});
        },
        py::arg("rule"), py::arg("scores"), py::arg("thetas"),
        py::arg("f_t") = std::vector<double>{});

  m.def("extract_meta_features", &extract_meta_features, py::arg("scores"),
        py::arg("alpha"),
        "The eight aggregate meta-features over a member score vector.");

  py::class_<EsbeModel>(m, "EsbeModel")
      .def_readonly("specs", &EsbeModel::specs)
      .def_readonly("members", &EsbeModel::members)
      .def_readonly("estimates", &EsbeModel::estimates)
      .def_readonly("dominant", &EsbeModel::dominant)
      .def_property_readonly("theta",
                             [](const EsbeModel& e) { return e.theta().theta; })
      .def("score",
           [](const EsbeModel& e, const std::vector<double>& x) {
             return e.score(x).value;
           },
           py::arg("x"))
      .def("predict", &EsbeModel::predict, py::arg("x"));

  m.def("train_esbe",
        [](const std::vector<ClassifierSpec>& specs, const Dataset& positives,
           Metric metric, double prior, std::uint64_t seed) {
          return train_esbe(specs, PositivesView::of(positives), metric, prior, seed);
        },
        py::arg("specs"), py::arg("positives"), py::arg("metric") = Metric::ocf,
        py::arg("prior") = 0.5, py::arg("seed") = 1,
        "Estimated-best-member ensemble over a shared 5x2 plan on the positives.");

  py::class_<InnerCvResult>(m, "InnerCvResult")
      .def_readonly("member_scores", &InnerCvResult::member_scores)
      .def_readonly("acceptance_rate", &InnerCvResult::acceptance_rate)
      .def_readonly("k_used", &InnerCvResult::k_used);

  m.def("run_inner_cv",
        [](const std::vector<ClassifierSpec>& specs, const Dataset& positives,
           std::size_t k_inner, std::uint64_t seed) {
          return run_inner_cv(specs, PositivesView::of(positives), k_inner, seed);
        },
        py::arg("specs"), py::arg("positives"), py::arg("k_inner"), py::arg("seed"),
        "Inner k-fold pass: holdout scores per (instance, member) plus pooled "
        "acceptance rates.");

  py::class_<MetaDataset>(m, "MetaDataset").def_readonly("rows", &MetaDataset::rows);

  m.def("build_meta_dataset",
        [](const std::vector<ClassifierSpec>& specs, const Dataset& positives,
           std::size_t k_inner, const std::vector<double>& alpha, std::uint64_t seed) {
          return build_meta_dataset(specs, PositivesView::of(positives), k_inner, alpha,
                                    seed);
        },
        py::arg("specs"), py::arg("positives"), py::arg("k_inner"), py::arg("alpha"),
        py::arg("seed"),
        "Meta-dataset via inner cross-validation; one meta-instance per training "
        "instance.");

  m.attr("ALL_META_FEATURES") = all_meta_features;

  py::class_<TupsoModel>(m, "TupsoModel")
      .def_readonly("specs", &TupsoModel::specs)
      .def_readonly("members", &TupsoModel::members)
      .def_readonly("alpha", &TupsoModel::alpha)
      .def_readonly("member_estimates", &TupsoModel::member_estimates)
      .def_readonly("f_t", &TupsoModel::f_t)
      .def_readonly("feature_mask", &TupsoModel::feature_mask)
      .def_readonly("scaler_lo", &TupsoModel::scaler_lo)
      .def_readonly("scaler_hi", &TupsoModel::scaler_hi)
      .def_readonly("meta", &TupsoModel::meta)
      .def_readonly("metric", &TupsoModel::metric)
      .def_readonly("k_inner", &TupsoModel::k_inner)
      .def("score",
           [](const TupsoModel& t, const std::vector<double>& x) {
             return t.score(x).value;
           },
           py::arg("x"))
      .def("predict", &TupsoModel::predict, py::arg("x"))
      .def("meta_input", &TupsoModel::meta_input, py::arg("member_scores"),
           "Scaled, masked meta-feature vector for a raw member-score vector.")
      .def("to_text", &TupsoModel::to_text)
      .def_static("from_text", &TupsoModel::from_text, py::arg("text"));

  m.def("train_tupso",
        [](const std::vector<ClassifierSpec>& specs, const Dataset& positives,
           std::size_t k_inner, Metric metric, double prior,
           const ClassifierSpec& meta_spec, const std::array<bool, 8>& feature_mask,
           std::uint64_t seed) {
          return train_tupso(specs, PositivesView::of(positives), k_inner, metric,
                             prior, meta_spec, feature_mask, seed);
        },
        py::arg("specs"), py::arg("positives"), py::arg("k_inner") = 10,
        py::arg("metric") = Metric::ocf, py::arg("prior") = 0.5,
        py::arg("meta_spec") = harness::default_meta_spec(),
        py::arg("feature_mask") = all_meta_features, py::arg("seed") = 1,
        "Stacked ensemble: one inner CV pass yields weights and the meta-dataset; "
        "the meta-classifier trains on min-max scaled meta-features.");

  // ---- evaluation ----------------------------------------------------------

  m.def("auc", &auc, py::arg("scores"), py::arg("labels"),
        "Mann-Whitney AUC with average-rank tie handling; labels are 1 or 0.");

  py::class_<RankMatrix>(m, "RankMatrix")
      .def(py::init<>())
      .def_readwrite("ranks", &RankMatrix::ranks)
      .def_readwrite("average_rank", &RankMatrix::average_rank);

  m.def("rank_rows", &rank_rows, py::arg("table"),
        "Average-rank every row (rank 1 = largest value; NaN marks missing).");
  m.def("display_ranks", &display_ranks, py::arg("row"),
        "Competition-style integer ranks; missing entries rank 0.");
  m.def("entropy_bits", &entropy_bits, py::arg("counts"),
        "Shannon entropy in bits of a nonnegative count histogram.");

  py::class_<RankEntropy>(m, "RankEntropy")
      .def_readonly("per_method", &RankEntropy::per_method)
      .def_readonly("per_rank", &RankEntropy::per_rank);

  m.def("rank_entropy", &rank_entropy, py::arg("counts"),
        "Entropies of counts[method][rank_position] along both axes.");

  py::class_<FriedmanResult>(m, "FriedmanResult")
      .def_readonly("chi2", &FriedmanResult::chi2)
      .def_readonly("statistic", &FriedmanResult::statistic)
      .def_readonly("p_value", &FriedmanResult::p_value)
      .def_readonly("reject_at_05", &FriedmanResult::reject_at_05)
      .def_readonly("saturated", &FriedmanResult::saturated)
      .def_readonly("n_rows", &FriedmanResult::n_rows)
      .def_readonly("k", &FriedmanResult::k)
      .def("__repr__", [](const FriedmanResult& r) {
        std::ostringstream os;
        os << "FriedmanResult(chi2=" << r.chi2 << ", F=" << r.statistic
           << ", p=" << r.p_value << ", reject_at_05=" << (r.reject_at_05 ? "True" : "False")
           << ")";
        return os.str();
      });

  m.def("friedman_test", &friedman_test, py::arg("ranks"),
        "Friedman test with the Iman-Davenport F statistic over complete rows.");

  py::class_<BonferroniDunnResult>(m, "BonferroniDunnResult")
      .def_readonly("control", &BonferroniDunnResult::control)
      .def_readonly("alpha", &BonferroniDunnResult::alpha)
      .def_readonly("adjusted_alpha", &BonferroniDunnResult::adjusted_alpha)
      .def_readonly("z", &BonferroniDunnResult::z)
      .def_readonly("p_value", &BonferroniDunnResult::p_value)
      .def_readonly("significant", &BonferroniDunnResult::significant);

  m.def("bonferroni_dunn", &bonferroni_dunn, py::arg("ranks"), py::arg("control"),
        py::arg("alpha") = 0.05,
        "Post-hoc comparison of every method against the control.");

  m.def("pearson", &pearson, py::arg("x"), py::arg("y"),
        "Product-moment correlation.");
  m.def("regularized_incomplete_beta", &regularized_incomplete_beta, py::arg("a"),
        py::arg("b"), py::arg("x"));
  m.def("f_distribution_upper_tail", &f_distribution_upper_tail, py::arg("f"),
        py::arg("d1"), py::arg("d2"));
  m.def("normal_two_sided_p", &normal_two_sided_p, py::arg("z"));

  // ---- harness -------------------------------------------------------------

  py::class_<harness::DatasetConfig>(m, "DatasetConfig")
      .def(py::init<>())
      .def_readwrite("name", &harness::DatasetConfig::name)
      .def_readwrite("path", &harness::DatasetConfig::path)
      .def_readwrite("class_column", &harness::DatasetConfig::class_column)
      .def_readwrite("target_class", &harness::DatasetConfig::target_class)
      .def_readwrite("delimiter", &harness::DatasetConfig::delimiter)
      .def_readwrite("missing_tokens", &harness::DatasetConfig::missing_tokens);

  py::class_<harness::ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("datasets", &harness::ExperimentConfig::datasets)
      .def_readwrite("members", &harness::ExperimentConfig::members)
      .def_readwrite("ensembles", &harness::ExperimentConfig::ensembles)
      .def_readwrite("metric", &harness::ExperimentConfig::metric)
      .def_readwrite("prior", &harness::ExperimentConfig::prior)
      .def_readwrite("seed", &harness::ExperimentConfig::seed)
      .def_readwrite("inner_k", &harness::ExperimentConfig::inner_k)
      .def_readwrite("meta_spec", &harness::ExperimentConfig::meta_spec)
      .def_readwrite("meta_features", &harness::ExperimentConfig::meta_features)
      .def_readwrite("output_dir", &harness::ExperimentConfig::output_dir)
      .def_readwrite("delimiter", &harness::ExperimentConfig::delimiter)
      .def_readwrite("missing_tokens", &harness::ExperimentConfig::missing_tokens);

  m.def("default_members", &harness::default_members,
        "The six default ensemble members.");
  m.def("all_ensemble_names", &harness::all_ensemble_names,
        "All ensemble method names in roster order.");
  m.def("default_meta_spec", &harness::default_meta_spec,
        "The stacking meta-classifier used when the config names none.");
  m.def("parse_config_file", &harness::parse_config_file, py::arg("path"),
        "Parse the sectioned key = value config format; raises ConfigError.");
  m.def("parse_config_text", &harness::parse_config_text, py::arg("text"));

  py::class_<harness::RawCell>(m, "RawCell")
      .def_readonly("dataset", &harness::RawCell::dataset)
      .def_readonly("method", &harness::RawCell::method)
      .def_readonly("repetition", &harness::RawCell::repetition)
      .def_readonly("fold", &harness::RawCell::fold)
      .def_readonly("auc_value", &harness::RawCell::auc_value)
      .def("__repr__", [](const harness::RawCell& c) {
        std::ostringstream os;
        os << "RawCell(" << c.dataset << ", " << c.method << ", rep=" << c.repetition
           << ", fold=" << c.fold << ", auc=" << c.auc_value << ")";
        return os.str();
      });

  py::class_<harness::FoldLogEntry>(m, "FoldLogEntry")
      .def_readonly("dataset", &harness::FoldLogEntry::dataset)
      .def_readonly("repetition", &harness::FoldLogEntry::repetition)
      .def_readonly("fold", &harness::FoldLogEntry::fold)
      .def_readonly("n_train_positives", &harness::FoldLogEntry::n_train_positives)
      .def_readonly("n_test", &harness::FoldLogEntry::n_test)
      .def_readonly("status", &harness::FoldLogEntry::status);

  py::class_<harness::EvaluationReport>(m, "EvaluationReport")
      .def_readonly("datasets", &harness::EvaluationReport::datasets)
      .def_readonly("members", &harness::EvaluationReport::members)
      .def_readonly("ensembles", &harness::EvaluationReport::ensembles)
      .def_readonly("cells", &harness::EvaluationReport::cells)
      .def_readonly("failures", &harness::EvaluationReport::failures)
      .def_readonly("fold_log", &harness::EvaluationReport::fold_log)
      .def_readonly("seed", &harness::EvaluationReport::seed)
      .def_readonly("metric", &harness::EvaluationReport::metric)
      .def_readonly("prior", &harness::EvaluationReport::prior)
      .def_readonly("inner_k", &harness::EvaluationReport::inner_k)
      .def_readonly("wall_seconds", &harness::EvaluationReport::wall_seconds)
      .def("all_methods", &harness::EvaluationReport::all_methods)
      .def("mean_table", &harness::EvaluationReport::mean_table, py::arg("methods"),
           "Mean AUC per (dataset, method); NaN where no cell exists.")
      .def("complete", &harness::EvaluationReport::complete);

  m.def("run_experiment", &harness::run_experiment, py::arg("config"),
        py::call_guard<py::gil_scoped_release>(),
        "5x2 cross-validated AUC benchmark of every member and ensemble.");
  m.def("emit_reports", &harness::emit_reports, py::arg("report"), py::arg("dir"),
        "Write raw_results.csv and the derived tables into dir.");
  m.def("load_raw_results", &harness::load_raw_results, py::arg("path"),
        "Rebuild a report (tables only) from a saved raw_results.csv.");

  m.def("gen_synthetic",
        [](const std::string& kind, std::size_t n_pos, std::size_t n_neg,
           std::size_t dim, double separation, std::uint64_t seed,
           const std::string& out_path) {
          harness::gen_synthetic(synth_kind_from_name(kind), n_pos, n_neg, dim,
                                 separation, seed, out_path);
        },
        py::arg("kind"), py::arg("n_pos"), py::arg("n_neg"), py::arg("dim"),
        py::arg("separation"), py::arg("seed"), py::arg("out_path"),
        "Write a synthetic CSV dataset ('two-gaussian' or 'uniform-ring'); "
        "deterministic under seed.");
}
