#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ocen/evaluation.hpp"
#include "ocen/rng.hpp"

using namespace ocen;

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double brute_force_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      ++pairs;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}
}  // namespace

TEST_CASE("AUC matches the worked pairwise example and the extremes") {
  // Positives {0.9, 0.4}, negative {0.6}: one winning pair of two -> 0.5.
  CHECK(auc({0.9, 0.4, 0.6}, {1, 1, 0}) == doctest::Approx(0.5));
  // Perfect separation and perfect inversion.
  CHECK(auc({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}) == doctest::Approx(1.0));
  CHECK(auc({0.1, 0.2, 0.8, 0.9}, {1, 1, 0, 0}) == doctest::Approx(0.0));
  // All scores tied -> chance.
  CHECK(auc({0.5, 0.5, 0.5}, {1, 1, 0}) == doctest::Approx(0.5));
}

TEST_CASE("AUC equals the O(n^2) pair count on tied random data") {
  Rng rng(19);
  std::vector<double> scores;
  std::vector<int> labels;
  for (int i = 0; i < 110; ++i) {
    // One-decimal quantization forces plenty of cross-class ties.
    scores.push_back(std::round(rng.uniform01() * 10.0) / 10.0);
    labels.push_back(i < 60 ? 1 : 0);
  }
  CHECK(auc(scores, labels) == doctest::Approx(brute_force_auc(scores, labels)).epsilon(1e-12));
}

TEST_CASE("AUC is invariant under strictly increasing transforms") {
  Rng rng(23);
  std::vector<double> scores;
  std::vector<int> labels;
  for (int i = 0; i < 80; ++i) {
    scores.push_back(std::round(rng.uniform01() * 20.0) / 20.0);
    labels.push_back(rng.bounded(2) == 0 ? 1 : 0);
  }
  labels[0] = 1;
  labels[1] = 0;  // guarantee both classes
  std::vector<double> warped;
  for (double s : scores) warped.push_back(s * s * s + 0.1 * s);
  CHECK(auc(warped, labels) == doctest::Approx(auc(scores, labels)).epsilon(1e-12));
}

TEST_CASE("AUC demands both classes") {
  CHECK_THROWS_AS(auc({0.5, 0.6}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(auc({0.5, 0.6}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(auc({0.5}, {1, 0}), std::invalid_argument);  // length mismatch
}

TEST_CASE("rank_rows assigns average ranks with 1 best") {
  auto rm = rank_rows({{0.9, 0.7, 0.9}});
  REQUIRE(rm.ranks.size() == 1);
  CHECK(rm.ranks[0][0] == doctest::Approx(1.5));
  CHECK(rm.ranks[0][1] == doctest::Approx(3.0));
  CHECK(rm.ranks[0][2] == doctest::Approx(1.5));

  // Each complete row's ranks sum to k(k+1)/2.
  Rng rng(29);
  std::vector<std::vector<double>> table;
  for (int r = 0; r < 10; ++r) {
    std::vector<double> row;
    for (int c = 0; c < 6; ++c) row.push_back(std::round(rng.uniform01() * 8.0) / 8.0);
    table.push_back(row);
  }
  auto big = rank_rows(table);
  for (const auto& row : big.ranks) {
    double sum = 0.0;
    for (double v : row) sum += v;
    CHECK(sum == doctest::Approx(21.0));
  }
}

TEST_CASE("rank_rows keeps NaN cells out of the averages") {
  auto rm = rank_rows({{0.9, kNaN}, {0.5, 0.7}});
  CHECK(rm.ranks[0][0] == doctest::Approx(1.0));
  CHECK(std::isnan(rm.ranks[0][1]));
  CHECK(rm.ranks[1][0] == doctest::Approx(2.0));
  CHECK(rm.ranks[1][1] == doctest::Approx(1.0));
  CHECK(rm.average_rank[0] == doctest::Approx(1.5));
  CHECK(rm.average_rank[1] == doctest::Approx(1.0));  // present rows only
}

TEST_CASE("display_ranks are competition style with 0 for missing") {
  CHECK(display_ranks({0.9, 0.7, 0.9}) == std::vector<int>{1, 3, 1});
  CHECK(display_ranks({kNaN, 0.5, 0.7}) == std::vector<int>{0, 2, 1});
  CHECK(display_ranks({0.2}) == std::vector<int>{1});
}

TEST_CASE("entropy_bits matches the hand-computed histograms") {
  CHECK(entropy_bits({1, 1, 1, 1, 1, 1}) ==
        doctest::Approx(2.584962500721156).epsilon(1e-12));
  CHECK(entropy_bits({20, 5, 5, 3, 3, 4}) ==
        doctest::Approx(2.142737648613667).epsilon(1e-12));
  CHECK(entropy_bits({5}) == doctest::Approx(0.0));
  CHECK(entropy_bits({2, 0, 2}) == doctest::Approx(1.0));  // zero counts skipped
  CHECK_THROWS_AS(entropy_bits({0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(entropy_bits({}), std::invalid_argument);
}

TEST_CASE("rank_entropy covers both axes and flags empty histograms") {
  auto re = rank_entropy({{2, 2}, {1, 3}});
  REQUIRE(re.per_method.size() == 2);
  REQUIRE(re.per_rank.size() == 2);
  CHECK(re.per_method[0] == doctest::Approx(1.0));
  CHECK(re.per_method[1] == doctest::Approx(0.8112781244591328).epsilon(1e-12));
  CHECK(re.per_rank[0] == doctest::Approx(0.9182958340544896).epsilon(1e-12));
  CHECK(re.per_rank[1] == doctest::Approx(0.9709505944546686).epsilon(1e-12));

  auto gaps = rank_entropy({{0, 0}, {1, 1}});
  CHECK(std::isnan(gaps.per_method[0]));
  CHECK(gaps.per_method[1] == doctest::Approx(1.0));
  CHECK(gaps.per_rank[0] == doctest::Approx(0.0));
  CHECK(gaps.per_rank[1] == doctest::Approx(0.0));
}

TEST_CASE("numeric helpers hit their closed-form values") {
  CHECK(regularized_incomplete_beta(2.0, 3.0, 0.5) == doctest::Approx(0.6875).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(3.0, 2.0, 0.25) ==
        doctest::Approx(0.05078125).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
  // F(2, 6) upper tail at 1 is (3/4)^3.
  CHECK(f_distribution_upper_tail(1.0, 2.0, 6.0) ==
        doctest::Approx(27.0 / 64.0).epsilon(1e-12));
  CHECK(f_distribution_upper_tail(0.0, 2.0, 6.0) == doctest::Approx(1.0));
  CHECK(normal_two_sided_p(1.96) == doctest::Approx(0.04999579029644087).epsilon(1e-11));
  CHECK(normal_two_sided_p(0.0) == doctest::Approx(1.0));
}

TEST_CASE("Friedman on the four-row example reproduces chi2 = 2") {
  // Value rows whose ranks are {1,2,3}, {1,2,3}, {2,3,1}, {2,1,3}.
  auto rm = rank_rows({{3, 2, 1}, {3, 2, 1}, {2, 1, 3}, {2, 3, 1}});
  auto res = friedman_test(rm);
  CHECK(res.n_rows == 4);
  CHECK(res.k == 3);
  CHECK(res.chi2 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(res.statistic == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.p_value == doctest::Approx(0.421875).epsilon(1e-12));
  CHECK_FALSE(res.reject_at_05);
  CHECK_FALSE(res.saturated);
}

TEST_CASE("Friedman saturates when one ordering always wins") {
  auto rm3 = rank_rows({{3, 2, 1}, {3, 2, 1}, {3, 2, 1}});
  auto res3 = friedman_test(rm3);
  CHECK(res3.chi2 == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(res3.saturated);
  CHECK(std::isinf(res3.statistic));
  CHECK(res3.p_value == 0.0);
  CHECK(res3.reject_at_05);

  auto rm4 = rank_rows({{3, 2, 1}, {3, 2, 1}, {3, 2, 1}, {3, 2, 1}});
  auto res4 = friedman_test(rm4);
  CHECK(res4.chi2 == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(res4.saturated);
}

TEST_CASE("Friedman treats fully tied data as no evidence") {
  auto rm = rank_rows({{0.5, 0.5, 0.5}, {0.7, 0.7, 0.7}, {0.2, 0.2, 0.2}});
  auto res = friedman_test(rm);
  CHECK(res.chi2 == doctest::Approx(0.0));
  CHECK(res.statistic == doctest::Approx(0.0));
  CHECK(res.p_value == doctest::Approx(1.0));
  CHECK_FALSE(res.reject_at_05);
}

TEST_CASE("Friedman uses complete rows only and enforces minima") {
  auto rm = rank_rows({{3, 2, 1}, {3, 2, 1}, {2, 1, 3}, {2, 3, 1}, {0.5, kNaN, 0.7}});
  auto res = friedman_test(rm);
  CHECK(res.n_rows == 4);  // the NaN row is dropped
  CHECK(res.chi2 == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(friedman_test(rank_rows({{1.0, 2.0}})), std::invalid_argument);
  CHECK_THROWS_AS(friedman_test(rank_rows({{kNaN, 2.0}, {kNaN, 1.0}})),
                  std::invalid_argument);
}

TEST_CASE("Bonferroni-Dunn against a control reproduces the z oracle") {
  // 40 identical rows of 7 methods; ranks {1, 2.5, 2.5, 4, 5, 6, 7}.
  std::vector<std::vector<double>> table(40, {7, 6, 6, 4, 3, 2, 1});
  auto rm = rank_rows(table);
  CHECK(rm.ranks[0][1] == doctest::Approx(2.5));
  auto bd = bonferroni_dunn(rm, 0, 0.05);
  CHECK(bd.adjusted_alpha == doctest::Approx(0.05 / 6.0).epsilon(1e-12));
  CHECK(bd.z[0] == 0.0);
  CHECK(bd.p_value[0] == 1.0);
  CHECK_FALSE(bd.significant[0]);
  // z = (1 - 2.5) / sqrt(7*8 / (6*40)) = -1.5 / sqrt(56/240).
  CHECK(bd.z[1] == doctest::Approx(-3.105295017040594).epsilon(1e-12));
  CHECK(bd.p_value[1] == doctest::Approx(0.001900893250446666).epsilon(1e-9));
  CHECK(bd.significant[1]);
  // A two-rank gap is even stronger.
  CHECK(bd.z[3] == doctest::Approx(-3.0 / std::sqrt(56.0 / 240.0)).epsilon(1e-12));
  CHECK(bd.significant[3]);

  CHECK_THROWS_AS(bonferroni_dunn(rm, 7, 0.05), std::invalid_argument);
  RankMatrix empty;
  CHECK_THROWS_AS(bonferroni_dunn(empty, 0, 0.05), std::invalid_argument);
}

TEST_CASE("pearson matches its oracle and rejects degenerate input") {
  CHECK(pearson({1, 2, 3}, {1, 2, 4}) ==
        doctest::Approx(0.9819805060619659).epsilon(1e-12));
  CHECK(pearson({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
  CHECK(pearson({1, 2, 3}, {6, 4, 2}) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(pearson({1, 2}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(pearson({1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(pearson({1, 2, 3}, {5, 5, 5}), std::invalid_argument);
}
