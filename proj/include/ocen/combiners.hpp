#pragma once

// Ensemble schemes: the eight fixed combining rules, the estimated-best-member
// ensemble (ESBE), and the stacked meta-learning ensemble (TUPSO).

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ocen/classifiers.hpp"
#include "ocen/data.hpp"
#include "ocen/estimation.hpp"

namespace ocen {

enum class FixedRule {
  majority,
  mean_vote,
  weighted_mean_vote,
  average,
  max,
  product,
  exclusive,
  weighted_vote_product,
};

std::string fixed_rule_name(FixedRule r);
FixedRule fixed_rule_from_name(const std::string& name);
const std::vector<FixedRule>& all_fixed_rules();

struct MemberOutputs {
  std::vector<double> scores;  // p_i in [0, 1]
  std::vector<double> thetas;  // theta_i
  std::vector<double> f_t;     // accepted-target fractions; may be empty for unweighted rules
};

// Evaluate one fixed rule; result clamped to [0, 1]. Weighted rules require
// f_t (throws std::invalid_argument otherwise).
double combine_fixed(FixedRule rule, const MemberOutputs& outputs);

// The eight aggregate meta-features over a member score vector:
//   f1 = sum 1{p >= 0.5}            f5 = sum a_i log(p_i), p clamped to [1e-6, 1]
//   f2 = sum p_i                    f6 = Var(1{p >= 0.5})
//   f3 = sum a_i p_i                f7 = Var(p)
//   f4 = sum a_i p_i^2              f8 = Var(a o p)
// Var is the population variance (divide by k).
std::array<double, 8> extract_meta_features(const std::vector<double>& scores,
                                            const std::vector<double>& alpha);

struct MetaDataset {
  std::vector<std::array<double, 8>> rows;  // all labeled positive by construction
};

struct EsbeModel {
  std::vector<ClassifierSpec> specs;
  std::vector<TrainedClassifier> members;  // retrained on the full positives
  std::vector<PerformanceEstimate> estimates;
  std::size_t dominant = 0;

  Score score(const std::vector<double>& x) const { return members[dominant].score(x); }
  int predict(const std::vector<double>& x) const { return members[dominant].predict(x); }
  Threshold theta() const { return members[dominant].theta(); }
};

// Estimate every member on a shared 5x2 plan over the positives; the dominant
// member is the argmax estimate (ties resolve to the earliest spec).
EsbeModel train_esbe(const std::vector<ClassifierSpec>& specs,
                     const PositivesView& positives, Metric metric, double prior,
                     std::uint64_t seed);

// Shared inner cross-validation pass: holdout scores for every (instance,
// member) pair plus per-member pooled holdout acceptance rates.
struct InnerCvResult {
  // member_scores[i][j] = member j's holdout score for view instance i.
  std::vector<std::vector<double>> member_scores;
  std::vector<double> acceptance_rate;  // per member: fraction of holdout votes = 1
  std::size_t k_used = 0;
};

InnerCvResult run_inner_cv(const std::vector<ClassifierSpec>& specs,
                           const PositivesView& positives, std::size_t k_inner,
                           std::uint64_t seed);

// Meta-dataset via inner k-fold cross-validation; exactly one meta-instance
// per training instance, all labeled positive.
MetaDataset build_meta_dataset(const std::vector<ClassifierSpec>& specs,
                               const PositivesView& positives, std::size_t k_inner,
                               const std::vector<double>& alpha, std::uint64_t seed);

struct TupsoModel {
  std::vector<ClassifierSpec> specs;
  std::vector<TrainedClassifier> members;  // retrained on the full positives
  std::vector<double> alpha;
  std::vector<PerformanceEstimate> member_estimates;
  std::vector<double> f_t;                // per-member inner-fold acceptance rates
  std::array<bool, 8> feature_mask{};     // active meta-features
  std::vector<double> scaler_lo, scaler_hi;  // per active feature
  TrainedClassifier meta;
  Metric metric = Metric::ocf;
  std::size_t k_inner = 10;

  Score score(const std::vector<double>& x) const;
  int predict(const std::vector<double>& x) const {
    return score_to_vote(score(x).value, meta.theta().theta);
  }

  std::string to_text() const;
  static TupsoModel from_text(const std::string& text);

  // Scaled, masked meta-feature vector for a raw member-score vector.
  std::vector<double> meta_input(const std::vector<double>& member_scores) const;
};

inline const std::array<bool, 8> all_meta_features = {true, true, true, true,
                                                      true, true, true, true};

// Full training pipeline: one inner CV pass provides both the weight vector
// (via the chosen metric) and the meta-dataset; the meta-classifier trains on
// min-max scaled meta-features; members retrain on the full positives.
TupsoModel train_tupso(const std::vector<ClassifierSpec>& specs,
                       const PositivesView& positives, std::size_t k_inner,
                       Metric metric, double prior, const ClassifierSpec& meta_spec,
                       const std::array<bool, 8>& feature_mask, std::uint64_t seed);

Score tupso_score(const TupsoModel& model, const std::vector<double>& x);

}  // namespace ocen
