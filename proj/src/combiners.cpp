#include "ocen/combiners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ocen/rng.hpp"

namespace ocen {
namespace {

constexpr double kLogClampLo = 1e-6;

double population_variance(const std::vector<double>& v) {
  const double k = static_cast<double>(v.size());
  double mean = std::accumulate(v.begin(), v.end(), 0.0) / k;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / k;
}

}  // namespace

std::string fixed_rule_name(FixedRule r) {
  switch (r) {
    case FixedRule::majority: return "majority";
    case FixedRule::mean_vote: return "mean_vote";
    case FixedRule::weighted_mean_vote: return "weighted_mean_vote";
    case FixedRule::average: return "average";
    case FixedRule::max: return "max";
    case FixedRule::product: return "product";
    case FixedRule::exclusive: return "exclusive";
    case FixedRule::weighted_vote_product: return "weighted_vote_product";
  }
  throw std::invalid_argument("unknown fixed rule tag");
}

FixedRule fixed_rule_from_name(const std::string& name) {
  for (FixedRule r : all_fixed_rules()) {
    if (fixed_rule_name(r) == name) return r;
  }
  throw std::invalid_argument("unknown combining rule '" + name + "'");
}

const std::vector<FixedRule>& all_fixed_rules() {
  static const std::vector<FixedRule> rules = {
      FixedRule::majority,  FixedRule::mean_vote, FixedRule::weighted_mean_vote,
      FixedRule::average,   FixedRule::max,       FixedRule::product,
      FixedRule::exclusive, FixedRule::weighted_vote_product,
  };
  return rules;
}

double combine_fixed(FixedRule rule, const MemberOutputs& outputs) {
  const std::size_t k = outputs.scores.size();
  if (k == 0 || outputs.thetas.size() != k) {
    throw std::invalid_argument("combine_fixed: malformed member outputs");
  }
  const bool weighted =
      rule == FixedRule::weighted_mean_vote || rule == FixedRule::weighted_vote_product;
  if (weighted && outputs.f_t.size() != k) {
    throw std::invalid_argument("combine_fixed: rule '" + fixed_rule_name(rule) +
                                "' requires per-member accepted-target fractions");
  }
  const double kd = static_cast<double>(k);
  std::vector<int> votes(k);
  for (std::size_t i = 0; i < k; ++i) {
    votes[i] = score_to_vote(outputs.scores[i], outputs.thetas[i]);
  }
  const int vote_sum = std::accumulate(votes.begin(), votes.end(), 0);

  double y = 0.0;
  switch (rule) {
    case FixedRule::majority:
      y = static_cast<double>(vote_sum) >= kd / 2.0 ? 1.0 : 0.0;
      break;
    case FixedRule::mean_vote:
      y = static_cast<double>(vote_sum) / kd;
      break;
    case FixedRule::weighted_mean_vote: {
      // Acceptances weighted by f_T, rejections by its complement.
      double sum = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        sum += votes[i] == 1 ? outputs.f_t[i] : 1.0 - outputs.f_t[i];
      }
      y = sum / kd;
      break;
    }
    case FixedRule::average:
      y = std::accumulate(outputs.scores.begin(), outputs.scores.end(), 0.0) / kd;
      break;
    case FixedRule::max:
      y = *std::max_element(outputs.scores.begin(), outputs.scores.end());
      break;
    case FixedRule::product: {
      double prod = 1.0;
      for (double p : outputs.scores) prod *= p;
      y = prod;
      break;
    }
    case FixedRule::exclusive:
      y = vote_sum == 1 ? 1.0 : 0.0;
      break;
    case FixedRule::weighted_vote_product: {
      double accept = 1.0, reject = 1.0;
      for (std::size_t i = 0; i < k; ++i) {
        accept *= outputs.f_t[i] * static_cast<double>(votes[i]);
        reject *= (1.0 - outputs.f_t[i]) * static_cast<double>(1 - votes[i]);
      }
      const double denom = accept + reject;
      y = denom == 0.0 ? 0.0 : accept / denom;
      break;
    }
  }
  return std::clamp(y, 0.0, 1.0);
}

std::array<double, 8> extract_meta_features(const std::vector<double>& scores,
                                            const std::vector<double>& alpha) {
  const std::size_t k = scores.size();
  if (k == 0 || alpha.size() != k) {
    throw std::invalid_argument("extract_meta_features: length mismatch");
  }
  std::array<double, 8> f{};
  std::vector<double> votes(k), weighted(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double p = scores[i];
    votes[i] = p >= 0.5 ? 1.0 : 0.0;
    weighted[i] = alpha[i] * p;
    f[0] += votes[i];
    f[1] += p;
    f[2] += alpha[i] * p;
    f[3] += alpha[i] * p * p;
    f[4] += alpha[i] * std::log(std::clamp(p, kLogClampLo, 1.0));
  }
  f[5] = population_variance(votes);
  f[6] = population_variance(scores);
  f[7] = population_variance(weighted);
  return f;
}

EsbeModel train_esbe(const std::vector<ClassifierSpec>& specs,
                     const PositivesView& positives, Metric metric, double prior,
                     std::uint64_t seed) {
  if (specs.empty()) throw std::invalid_argument("train_esbe: no member specs");
  EsbeModel model;
  model.specs = specs;
  const auto plan = io::make_5x2_plan(positives.size(), seed).splits();
  for (const auto& spec : specs) {
    model.estimates.push_back(
        estimate_member_performance(spec, positives, metric, prior, plan));
  }
  model.dominant = 0;
  for (std::size_t i = 1; i < model.estimates.size(); ++i) {
    if (model.estimates[i].value > model.estimates[model.dominant].value) {
      model.dominant = i;
    }
  }
  for (const auto& spec : specs) model.members.push_back(train(spec, positives));
  return model;
}

InnerCvResult run_inner_cv(const std::vector<ClassifierSpec>& specs,
                           const PositivesView& positives, std::size_t k_inner,
                           std::uint64_t seed) {
  if (specs.empty()) throw std::invalid_argument("inner cv: no member specs");
  const std::size_t n = positives.size();
  if (k_inner < 2) throw std::invalid_argument("inner cv: k_inner must be >= 2");
  if (n < k_inner) {
    throw std::invalid_argument("inner cv: k_inner = " + std::to_string(k_inner) +
                                " exceeds " + std::to_string(n) + " positives");
  }
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  const auto folds = io::make_kfold_plan(all, k_inner, seed);

  InnerCvResult result;
  result.k_used = k_inner;
  result.member_scores.assign(n, std::vector<double>(specs.size(), 0.0));
  std::vector<std::size_t> accepted(specs.size(), 0);
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const PositivesView train_view = positives.subview(folds[f].train);
    for (std::size_t j = 0; j < specs.size(); ++j) {
      TrainedClassifier model;
      try {
        model = train(specs[j], train_view);
      } catch (const std::exception& e) {
        throw std::runtime_error("inner fold " + std::to_string(f) + ", member '" +
                                 specs[j].display_name() + "': " + e.what());
      }
      for (std::size_t pos : folds[f].test) {
        const double sc = model.score(positives.row(pos)).value;
        result.member_scores[pos][j] = sc;
        if (score_to_vote(sc, model.theta().theta) == 1) ++accepted[j];
      }
    }
  }
  result.acceptance_rate.resize(specs.size());
  for (std::size_t j = 0; j < specs.size(); ++j) {
    result.acceptance_rate[j] =
        static_cast<double>(accepted[j]) / static_cast<double>(n);
  }
  return result;
}

MetaDataset build_meta_dataset(const std::vector<ClassifierSpec>& specs,
                               const PositivesView& positives, std::size_t k_inner,
                               const std::vector<double>& alpha, std::uint64_t seed) {
  const InnerCvResult cv = run_inner_cv(specs, positives, k_inner, seed);
  MetaDataset meta;
  meta.rows.reserve(positives.size());
  for (const auto& scores : cv.member_scores) {
    meta.rows.push_back(extract_meta_features(scores, alpha));
  }
  return meta;
}

std::vector<double> TupsoModel::meta_input(const std::vector<double>& member_scores) const {
  const std::array<double, 8> f = extract_meta_features(member_scores, alpha);
  std::vector<double> out;
  out.reserve(scaler_lo.size());
  std::size_t c = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    if (!feature_mask[i]) continue;
    const double lo = scaler_lo[c], hi = scaler_hi[c];
    const double scaled = hi > lo ? (f[i] - lo) / (hi - lo) : 0.0;
    out.push_back(std::clamp(scaled, 0.0, 1.0));
    ++c;
  }
  return out;
}

Score TupsoModel::score(const std::vector<double>& x) const {
  std::vector<double> member_scores(members.size());
  for (std::size_t j = 0; j < members.size(); ++j) {
    member_scores[j] = members[j].score(x).value;
  }
  return meta.score(meta_input(member_scores));
}

Score tupso_score(const TupsoModel& model, const std::vector<double>& x) {
  return model.score(x);
}

TupsoModel train_tupso(const std::vector<ClassifierSpec>& specs,
                       const PositivesView& positives, std::size_t k_inner,
                       Metric metric, double prior, const ClassifierSpec& meta_spec,
                       const std::array<bool, 8>& feature_mask, std::uint64_t seed) {
  if (specs.empty()) throw std::invalid_argument("train_tupso: no member specs");
  if (std::none_of(feature_mask.begin(), feature_mask.end(), [](bool b) { return b; })) {
    throw std::invalid_argument("train_tupso: empty meta-feature mask");
  }
  TupsoModel model;
  model.specs = specs;
  model.metric = metric;
  model.k_inner = k_inner;
  model.feature_mask = feature_mask;

  // One inner CV pass supplies the weighting estimates, the accepted-target
  // fractions, and the raw member scores for the meta-dataset.
  const InnerCvResult cv = run_inner_cv(specs, positives, k_inner, seed);
  model.f_t = cv.acceptance_rate;
  for (std::size_t j = 0; j < specs.size(); ++j) {
    model.member_estimates.push_back(
        estimate_from_rates(metric, prior, 1.0 - cv.acceptance_rate[j], std::nullopt));
  }
  model.alpha = compute_weights(model.member_estimates);

  const std::size_t n = positives.size();
  std::vector<std::array<double, 8>> raw_meta;
  raw_meta.reserve(n);
  for (const auto& scores : cv.member_scores) {
    raw_meta.push_back(extract_meta_features(scores, model.alpha));
  }

  // Min-max scale the active meta-feature columns over the meta-dataset.
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < 8; ++i) {
    if (feature_mask[i]) active.push_back(i);
  }
  model.scaler_lo.resize(active.size());
  model.scaler_hi.resize(active.size());
  for (std::size_t c = 0; c < active.size(); ++c) {
    double lo = raw_meta[0][active[c]], hi = raw_meta[0][active[c]];
    for (const auto& row : raw_meta) {
      lo = std::min(lo, row[active[c]]);
      hi = std::max(hi, row[active[c]]);
    }
    model.scaler_lo[c] = lo;
    model.scaler_hi[c] = hi;
  }

  Dataset meta_ds;
  meta_ds.name = "meta";
  for (std::size_t c = 0; c < active.size(); ++c) {
    meta_ds.feature_names.push_back("f" + std::to_string(active[c] + 1));
  }
  meta_ds.instances.reserve(n);
  for (const auto& row : raw_meta) {
    Instance inst;
    inst.label = Label::positive;
    for (std::size_t c = 0; c < active.size(); ++c) {
      const double lo = model.scaler_lo[c], hi = model.scaler_hi[c];
      const double scaled = hi > lo ? (row[active[c]] - lo) / (hi - lo) : 0.0;
      inst.features.push_back(std::clamp(scaled, 0.0, 1.0));
    }
    meta_ds.instances.push_back(std::move(inst));
  }
  model.meta = train(meta_spec, PositivesView::of(meta_ds));

  for (const auto& spec : specs) model.members.push_back(train(spec, positives));
  return model;
}

}  // namespace ocen
