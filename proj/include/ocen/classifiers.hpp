#pragma once

// One-class base learners. Each is fit on positives only and yields a score
// in [0, 1] plus an acceptance threshold theta; predict(x) accepts iff
// score(x) >= theta.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ocen/data.hpp"

namespace ocen {

enum class Algo { pga, gde, density_agg, ocsvm };
enum class PsiMean { harmonic, geometric };
enum class KernelKind { linear, polynomial };

std::string algo_name(Algo a);
Algo algo_from_name(const std::string& name);

struct ClassifierSpec {
  Algo algo = Algo::density_agg;
  std::string name;  // display name; defaults to the algorithm tag

  // pga
  double p_alpha = 0.01;
  int k_nn = 1;
  // density_agg
  PsiMean psi = PsiMean::harmonic;
  double s = 0.02;
  // ocsvm
  KernelKind kernel = KernelKind::linear;
  int degree = 2;
  double nu = 0.05;

  void validate() const;  // throws std::invalid_argument on bad hyperparameters
  std::string display_name() const { return name.empty() ? algo_name(algo) : name; }
};

namespace detail {

struct PgaState {
  int k_nn = 1;
  std::vector<std::vector<double>> points;
  std::vector<double> sorted_d;  // mean k-NN distance per training point, ascending
};

struct GdeState {
  std::vector<std::vector<double>> points;
  double r = 0.0;
  double mean_count = 0.0;
  double sd_count = 0.0;  // sample standard deviation (n-1); 0 marks the degenerate rule
};

struct DensityState {
  PsiMean psi = PsiMean::harmonic;
  double s = 0.02;
  std::size_t bins = 1;
  // bin_mass[feature][bin]: smoothed probability mass, sums to 1 per feature.
  std::vector<std::vector<double>> bin_mass;
  double max_raw = 1.0;  // max raw psi-mean over the training set
};

struct SvmState {
  KernelKind kernel = KernelKind::linear;
  int degree = 2;
  double nu = 0.05;
  std::vector<std::vector<double>> support;  // training points with alpha > 0
  std::vector<double> alpha;                 // matching dual coefficients
  double rho = 0.0;
  double sigma_g = 1.0;
};

using State = std::variant<PgaState, GdeState, DensityState, SvmState>;

}  // namespace detail

class TrainedClassifier {
 public:
  TrainedClassifier() = default;
  TrainedClassifier(Algo algo, std::string name, double theta, detail::State state,
                    bool convergence_warning = false)
      : algo_(algo), name_(std::move(name)), theta_(theta), state_(std::move(state)),
        convergence_warning_(convergence_warning) {}

  Algo algo() const { return algo_; }
  const std::string& name() const { return name_; }
  Threshold theta() const { return {theta_}; }
  bool convergence_warning() const { return convergence_warning_; }
  std::size_t dim() const;

  Score score(const std::vector<double>& x) const;
  int predict(const std::vector<double>& x) const {
    return score_to_vote(score(x).value, theta_);
  }

  // Versioned self-describing text serialization; round-trips reproduce
  // bit-identical scores.
  std::string to_text() const;
  static TrainedClassifier from_text(const std::string& text);

  const detail::State& state() const { return state_; }

 private:
  Algo algo_ = Algo::pga;
  std::string name_;
  double theta_ = 0.5;
  detail::State state_;
  bool convergence_warning_ = false;
};

// Nearest-neighbor percentile detector: scores by the fraction of training
// nearest-neighbor distances strictly below d(x, S); theta = p_alpha. k_nn is
// clamped to |positives| - 1.
TrainedClassifier train_pga(const PositivesView& positives, double p_alpha = 0.01,
                            int k_nn = 1);

// Global density estimation: neighborhood counts at radius r = 2 x mean
// nearest-neighbor distance, scored by exp(-z^2) against the training count
// distribution; theta = 1/2.
TrainedClassifier train_gde(const PositivesView& positives);

// Per-feature histogram density aggregated by a harmonic or geometric mean,
// normalized by the training maximum; theta = the empirical s-quantile of the
// training scores.
TrainedClassifier train_density_agg(const PositivesView& positives,
                                    PsiMean psi = PsiMean::harmonic, double s = 0.02);

// nu-one-class SVM: minimize (1/2) a^T K a subject to 0 <= a_i <= 1/(nu n),
// sum a = 1, solved by maximal-violating-pair updates to KKT tolerance 1e-3
// (at most 10^4 pair updates); score = logistic(g / sigma_g), theta = 0.5.
// audit, when non-null, is invoked with (alpha, C) after every pair update.
using SvmIterateAudit = void (*)(const std::vector<double>& alpha, double box_c);
TrainedClassifier train_ocsvm(const PositivesView& positives,
                              KernelKind kernel = KernelKind::linear, int degree = 2,
                              double nu = 0.05, SvmIterateAudit audit = nullptr);

// Dispatch on spec.algo.
TrainedClassifier train(const ClassifierSpec& spec, const PositivesView& positives);

// Dual objective (1/2) a^T K a of a fitted SVM state, for diagnostics/tests.
double ocsvm_dual_objective(const TrainedClassifier& model);

namespace detail {
double kernel_eval(KernelKind k, int degree, const std::vector<double>& a,
                   const std::vector<double>& b);
}

}  // namespace ocen
