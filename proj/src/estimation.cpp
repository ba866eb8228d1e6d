#include "ocen/estimation.hpp"

#include <algorithm>
#include <stdexcept>

namespace ocen {

std::string metric_name(Metric m) { return m == Metric::oca ? "OCA" : "OCF"; }

Metric metric_from_name(const std::string& name) {
  std::string up;
  for (char c : name) up.push_back(static_cast<char>(std::toupper(c)));
  if (up == "OCA") return Metric::oca;
  if (up == "OCF") return Metric::ocf;
  throw std::invalid_argument("unknown metric '" + name + "' (expected OCA or OCF)");
}

PerformanceEstimate estimate_from_rates(Metric metric, double prior, double fnr,
                                        std::optional<double> p1_unlabeled) {
  PerformanceEstimate est;
  est.metric = metric;
  est.prior = prior;
  est.fnr = fnr;
  est.tpr = 1.0 - fnr;
  est.p1 = p1_unlabeled.value_or(est.tpr);
  if (metric == Metric::oca) {
    const double error = est.p1 - prior + 2.0 * fnr * prior;
    est.value = std::clamp(1.0 - error, 0.0, 1.0);
  } else if (!p1_unlabeled.has_value()) {
    // Positives-only fallback: OCF reduces to the true-positive rate exactly.
    est.value = est.tpr;
  } else {
    est.value = est.p1 > 0.0 ? std::clamp(est.tpr * est.tpr / est.p1, 0.0, 1.0) : 0.0;
  }
  return est;
}

PerformanceEstimate estimate_member_performance(const ClassifierSpec& spec,
                                                const PositivesView& positives,
                                                Metric metric, double prior,
                                                const std::vector<io::FoldSplit>& plan,
                                                const Dataset* unlabeled) {
  if (positives.size() == 0) {
    throw std::invalid_argument("performance estimation requires positives");
  }
  std::size_t holdout_total = 0, holdout_negative_votes = 0;
  std::size_t unlabeled_total = 0, unlabeled_positive_votes = 0;
  for (std::size_t f = 0; f < plan.size(); ++f) {
    TrainedClassifier model;
    try {
      model = train(spec, positives.subview(plan[f].train));
    } catch (const std::exception& e) {
      throw std::runtime_error("estimation fold " + std::to_string(f) +
                               " training failed: " + e.what());
    }
    for (std::size_t pos : plan[f].test) {
      ++holdout_total;
      if (model.predict(positives.row(pos)) == 0) ++holdout_negative_votes;
    }
    if (unlabeled != nullptr) {
      for (const auto& inst : unlabeled->instances) {
        ++unlabeled_total;
        if (model.predict(inst.features) == 1) ++unlabeled_positive_votes;
      }
    }
  }
  if (holdout_total == 0) {
    throw std::invalid_argument("estimation plan has no holdout instances");
  }
  const double fnr = static_cast<double>(holdout_negative_votes) /
                     static_cast<double>(holdout_total);
  std::optional<double> p1;
  if (unlabeled != nullptr && unlabeled_total > 0) {
    p1 = static_cast<double>(unlabeled_positive_votes) /
         static_cast<double>(unlabeled_total);
  }
  return estimate_from_rates(metric, prior, fnr, p1);
}

std::vector<double> compute_weights(const std::vector<double>& perfs) {
  if (perfs.empty()) throw std::invalid_argument("compute_weights: empty input");
  double sum = 0.0;
  for (double p : perfs) {
    if (p < 0.0) throw std::invalid_argument("compute_weights: negative performance");
    sum += p;
  }
  std::vector<double> alpha(perfs.size());
  if (sum == 0.0) {
    std::fill(alpha.begin(), alpha.end(), 1.0 / static_cast<double>(perfs.size()));
  } else {
    for (std::size_t i = 0; i < perfs.size(); ++i) alpha[i] = perfs[i] / sum;
  }
  return alpha;
}

std::vector<double> compute_weights(const std::vector<PerformanceEstimate>& perfs) {
  std::vector<double> values;
  values.reserve(perfs.size());
  for (const auto& p : perfs) values.push_back(p.value);
  return compute_weights(values);
}

}  // namespace ocen
