#pragma once

// AUC, ranking, rank entropy, Friedman / Bonferroni-Dunn significance tests,
// and Pearson correlation.

#include <cstddef>
#include <vector>

namespace ocen {

// Mann-Whitney AUC with average-rank tie handling; labels are 1 (positive) or
// 0 (negative). Throws std::invalid_argument unless both classes are present.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

// Missing cells are encoded as NaN throughout the ranking utilities.
struct RankMatrix {
  // ranks[row][method]; NaN where the cell was missing. Ties share the
  // average rank; rank 1 is the best (largest) value.
  std::vector<std::vector<double>> ranks;
  // Per-method mean rank over the rows where the method is present.
  std::vector<double> average_rank;
};

RankMatrix rank_rows(const std::vector<std::vector<double>>& table);

// Competition-style display ranks for one row of values: 1 + the number of
// strictly better entries; tied methods share the same integer. Missing
// (NaN) entries yield rank 0.
std::vector<int> display_ranks(const std::vector<double>& row);

// Shannon entropy in bits of a nonnegative count histogram (zero counts are
// skipped). Throws std::invalid_argument if all counts are zero.
double entropy_bits(const std::vector<double>& counts);

struct RankEntropy {
  std::vector<double> per_method;  // entropy of each method's rank histogram
  std::vector<double> per_rank;    // entropy of each rank position across methods
};

// counts[method][rank_position]; methods with an all-zero histogram and empty
// rank columns get entropy NaN.
RankEntropy rank_entropy(const std::vector<std::vector<double>>& counts);

struct FriedmanResult {
  double chi2 = 0.0;       // Friedman chi-square
  double statistic = 0.0;  // Iman-Davenport F
  double p_value = 1.0;
  bool reject_at_05 = false;
  bool saturated = false;  // F denominator <= 0 (chi2 at its maximum)
  std::size_t n_rows = 0;  // complete rows used
  std::size_t k = 0;
};

// Uses only the complete (NaN-free) rows of the rank matrix. Throws
// std::invalid_argument when fewer than 2 complete rows or methods remain.
FriedmanResult friedman_test(const RankMatrix& ranks);

struct BonferroniDunnResult {
  std::size_t control = 0;
  double alpha = 0.05;
  double adjusted_alpha = 0.05;     // alpha / (k - 1)
  std::vector<double> z;            // z[control] = 0
  std::vector<double> p_value;      // two-sided; p[control] = 1
  std::vector<bool> significant;    // p < adjusted_alpha, control always false
};

BonferroniDunnResult bonferroni_dunn(const RankMatrix& ranks, std::size_t control,
                                     double alpha = 0.05);

// Product-moment correlation; throws std::invalid_argument on length
// mismatch, n < 2, or zero variance.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Numeric helpers (exposed for tests).
double regularized_incomplete_beta(double a, double b, double x);
double f_distribution_upper_tail(double f, double d1, double d2);
double normal_two_sided_p(double z);

}  // namespace ocen
