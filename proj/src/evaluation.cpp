#include "ocen/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ocen {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Average ranks (1 = largest value) with average-rank tie handling.
std::vector<double> average_ranks_desc(const std::vector<double>& values) {
  const std::size_t k = values.size();
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::isnan(values[i])) order.push_back(i);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<double> ranks(k, kNaN);
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("auc: scores/labels length mismatch");
  }
  const std::size_t n = scores.size();
  std::size_t n_pos = 0;
  for (int y : labels) {
    if (y != 0 && y != 1) throw std::invalid_argument("auc: labels must be 0 or 1");
    n_pos += static_cast<std::size_t>(y);
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw std::invalid_argument("auc requires at least one positive and one negative");
  }
  // Mann-Whitney via average ranks over the pooled scores (ascending).
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  std::vector<double> rank(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) rank[order[t]] = shared;
    i = j + 1;
  }
  double pos_rank_sum = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    if (labels[t] == 1) pos_rank_sum += rank[t];
  }
  const double np = static_cast<double>(n_pos), nn = static_cast<double>(n_neg);
  const double u = pos_rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * nn);
}

RankMatrix rank_rows(const std::vector<std::vector<double>>& table) {
  if (table.empty()) throw std::invalid_argument("rank_rows: empty table");
  const std::size_t k = table[0].size();
  RankMatrix rm;
  rm.ranks.reserve(table.size());
  for (const auto& row : table) {
    if (row.size() != k) throw std::invalid_argument("rank_rows: ragged table");
    rm.ranks.push_back(average_ranks_desc(row));
  }
  rm.average_rank.assign(k, kNaN);
  for (std::size_t j = 0; j < k; ++j) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& row : rm.ranks) {
      if (!std::isnan(row[j])) {
        sum += row[j];
        ++count;
      }
    }
    if (count > 0) rm.average_rank[j] = sum / static_cast<double>(count);
  }
  return rm;
}

std::vector<int> display_ranks(const std::vector<double>& row) {
  std::vector<int> out(row.size(), 0);
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (std::isnan(row[j])) continue;
    int better = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!std::isnan(row[i]) && row[i] > row[j]) ++better;
    }
    out[j] = 1 + better;
  }
  return out;
}

double entropy_bits(const std::vector<double>& counts) {
  double total = 0.0;
  for (double c : counts) {
    if (c < 0.0) throw std::invalid_argument("entropy: negative count");
    total += c;
  }
  if (total == 0.0) throw std::invalid_argument("entropy: all counts are zero");
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) {
      const double p = c / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

RankEntropy rank_entropy(const std::vector<std::vector<double>>& counts) {
  if (counts.empty()) throw std::invalid_argument("rank_entropy: empty counts");
  const std::size_t n_ranks = counts[0].size();
  RankEntropy out;
  for (const auto& row : counts) {
    if (row.size() != n_ranks) throw std::invalid_argument("rank_entropy: ragged counts");
    const bool all_zero = std::all_of(row.begin(), row.end(), [](double c) { return c == 0.0; });
    out.per_method.push_back(all_zero ? kNaN : entropy_bits(row));
  }
  for (std::size_t r = 0; r < n_ranks; ++r) {
    std::vector<double> col;
    col.reserve(counts.size());
    for (const auto& row : counts) col.push_back(row[r]);
    const bool all_zero = std::all_of(col.begin(), col.end(), [](double c) { return c == 0.0; });
    out.per_rank.push_back(all_zero ? kNaN : entropy_bits(col));
  }
  return out;
}

// Regularized incomplete beta I_x(a, b) by the Lentz continued fraction
// (relative tolerance 1e-10), using the symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
// to keep the fraction in its fast-converging region.
double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("inc_beta: a, b must be > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x > (a + 1.0) / (a + b + 2.0)) {
    return 1.0 - regularized_incomplete_beta(b, a, 1.0 - x);
  }
  const double ln_front = a * std::log(x) + b * std::log(1.0 - x) -
                          std::log(a) - (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
  constexpr double kTiny = 1e-300;
  constexpr double kRelTol = 1e-10;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 500; ++m) {
    const double md = static_cast<double>(m);
    // Even step.
    double num = md * (b - md) * x / ((a + 2.0 * md - 1.0) * (a + 2.0 * md));
    d = 1.0 + num * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    // Odd step.
    num = -(a + md) * (a + b + md) * x / ((a + 2.0 * md) * (a + 2.0 * md + 1.0));
    d = 1.0 + num * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + num / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kRelTol) break;
  }
  return std::exp(ln_front) * h;
}

double f_distribution_upper_tail(double f, double d1, double d2) {
  if (f <= 0.0) return 1.0;
  // P(F >= f) = I_{d2 / (d2 + d1 f)}(d2/2, d1/2).
  const double x = d2 / (d2 + d1 * f);
  return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, x);
}

double normal_two_sided_p(double z) {
  return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

FriedmanResult friedman_test(const RankMatrix& ranks) {
  std::vector<const std::vector<double>*> complete;
  for (const auto& row : ranks.ranks) {
    if (std::none_of(row.begin(), row.end(), [](double r) { return std::isnan(r); })) {
      complete.push_back(&row);
    }
  }
  const std::size_t n = complete.size();
  const std::size_t k = ranks.ranks.empty() ? 0 : ranks.ranks[0].size();
  if (n < 2 || k < 2) {
    throw std::invalid_argument("friedman test requires >= 2 complete rows and >= 2 methods");
  }
  const double nd = static_cast<double>(n), kd = static_cast<double>(k);
  double sum_sq = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    double mean = 0.0;
    for (const auto* row : complete) mean += (*row)[j];
    mean /= nd;
    sum_sq += mean * mean;
  }
  FriedmanResult res;
  res.n_rows = n;
  res.k = k;
  res.chi2 = 12.0 * nd / (kd * (kd + 1.0)) *
             (sum_sq - kd * (kd + 1.0) * (kd + 1.0) / 4.0);
  if (res.chi2 < 0.0 && res.chi2 > -1e-9) res.chi2 = 0.0;  // round-off guard

  const double denom = nd * (kd - 1.0) - res.chi2;
  if (denom <= 0.0) {
    res.saturated = true;
    res.statistic = std::numeric_limits<double>::infinity();
    res.p_value = 0.0;
  } else {
    res.statistic = (nd - 1.0) * res.chi2 / denom;
    res.p_value =
        f_distribution_upper_tail(res.statistic, kd - 1.0, (kd - 1.0) * (nd - 1.0));
  }
  res.reject_at_05 = res.p_value < 0.05;
  return res;
}

BonferroniDunnResult bonferroni_dunn(const RankMatrix& ranks, std::size_t control,
                                     double alpha) {
  std::size_t n = 0;
  for (const auto& row : ranks.ranks) {
    if (std::none_of(row.begin(), row.end(), [](double r) { return std::isnan(r); })) ++n;
  }
  const std::size_t k = ranks.ranks.empty() ? 0 : ranks.ranks[0].size();
  if (n < 1 || k < 2) {
    throw std::invalid_argument("bonferroni-dunn requires >= 1 complete row and >= 2 methods");
  }
  if (control >= k) throw std::invalid_argument("bonferroni-dunn: control index out of range");

  // Mean ranks over complete rows only (consistent with the omnibus test).
  std::vector<double> mean_rank(k, 0.0);
  for (const auto& row : ranks.ranks) {
    if (std::any_of(row.begin(), row.end(), [](double r) { return std::isnan(r); })) continue;
    for (std::size_t j = 0; j < k; ++j) mean_rank[j] += row[j];
  }
  for (double& m : mean_rank) m /= static_cast<double>(n);

  const double kd = static_cast<double>(k), nd = static_cast<double>(n);
  const double se = std::sqrt(kd * (kd + 1.0) / (6.0 * nd));
  BonferroniDunnResult res;
  res.control = control;
  res.alpha = alpha;
  res.adjusted_alpha = alpha / (kd - 1.0);
  res.z.assign(k, 0.0);
  res.p_value.assign(k, 1.0);
  res.significant.assign(k, false);
  for (std::size_t j = 0; j < k; ++j) {
    if (j == control) continue;
    res.z[j] = (mean_rank[control] - mean_rank[j]) / se;
    res.p_value[j] = normal_two_sided_p(res.z[j]);
    res.significant[j] = res.p_value[j] < res.adjusted_alpha;
  }
  return res;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("pearson requires n >= 2");
  const double nd = static_cast<double>(n);
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / nd;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / nd;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("pearson: zero variance");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace ocen
