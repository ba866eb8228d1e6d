#pragma once

// Positives-only performance estimation (one-class accuracy and F-measure)
// and the derived member weights.

#include <cstdint>
#include <optional>
#include <vector>

#include "ocen/classifiers.hpp"
#include "ocen/data.hpp"
#include "ocen/dataset_io.hpp"

namespace ocen {

enum class Metric { oca, ocf };

std::string metric_name(Metric m);
Metric metric_from_name(const std::string& name);

struct PerformanceEstimate {
  Metric metric = Metric::ocf;
  double value = 0.0;  // in [0, 1]
  double p1 = 0.0;     // estimated Pr[f(x) = 1]
  double fnr = 0.0;    // estimated Pr[f(x) = 0 | Y = 1]
  double tpr = 0.0;    // 1 - fnr
  double prior = 0.5;  // pi = Pr[Y = 1]
};

// Assemble an estimate from the measured rates. With no unlabeled estimate,
// p1 falls back to tpr and OCF reduces to tpr exactly.
// OCA = clamp(1 - (p1 - prior + 2 fnr prior), 0, 1).
// OCF = clamp(tpr^2 / p1, 0, 1) when p1 > 0, else 0.
PerformanceEstimate estimate_from_rates(Metric metric, double prior, double fnr,
                                        std::optional<double> p1_unlabeled);

// Cross-validated estimate: for every (train, holdout) split of the plan,
// train the spec on the training rows of the view and vote on the holdout
// rows; fnr pools all holdout votes. When unlabeled data is supplied, p1
// pools each fold model's votes over the whole unlabeled set.
PerformanceEstimate estimate_member_performance(
    const ClassifierSpec& spec, const PositivesView& positives, Metric metric,
    double prior, const std::vector<io::FoldSplit>& plan,
    const Dataset* unlabeled = nullptr);

// alpha_i = perf_i / sum(perf); an all-zero input yields uniform weights.
std::vector<double> compute_weights(const std::vector<double>& perfs);
std::vector<double> compute_weights(const std::vector<PerformanceEstimate>& perfs);

}  // namespace ocen
