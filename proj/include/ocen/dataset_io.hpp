#pragma once

// Tabular ingestion: CSV loading, class binarization, one-hot encoding with
// min-max normalization, and deterministic cross-validation plans.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ocen/data.hpp"

namespace ocen::io {

// Errors carry enough position information to locate the offending cell.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ColumnKind { numeric, categorical };

struct RawTable {
  std::vector<std::string> column_names;
  std::vector<ColumnKind> kinds;           // one per column (class column included)
  std::size_t class_column = 0;
  // cells[row][col]; std::nullopt marks a missing value.
  std::vector<std::vector<std::optional<std::string>>> cells;
  std::string target_class;                // set by binarize

  std::size_t rows() const { return cells.size(); }
  std::size_t cols() const { return column_names.size(); }
  bool is_positive_row(std::size_t r) const;
};

struct LoadOptions {
  char delimiter = ',';
  std::set<std::string> missing_tokens = {"?", ""};
  // Per-column kind overrides by column name.
  std::vector<std::pair<std::string, ColumnKind>> kind_overrides;
};

// class_column is a header name, or, when no header matches, a 0-based column
// index in decimal.
RawTable load_csv(const std::string& path, const std::string& class_column,
                  const LoadOptions& options = {});

// Keep only the two most frequent class values (ties broken by lexicographic
// class name); the more frequent of the two becomes the target class. Pass a
// nonempty target_override to force which of the two kept classes is the
// target.
RawTable binarize(const RawTable& table, const std::string& target_override = "");

// Column encoder fitted on a chosen subset of rows (the positives-only
// training portion). Numeric columns: median imputation of missing values,
// then min-max to [0, 1] (constant columns map to 0); values outside the
// fitted range clamp to [0, 1] at transform time. Categorical columns: one
// indicator per category observed at fit time, plus an explicit "missing"
// category when a missing value was observed; categories first seen at
// transform time encode as all zeros.
class Encoder {
 public:
  static Encoder fit(const RawTable& table, const std::vector<std::size_t>& fit_rows);

  // Encode the given rows (default: all rows). Labels come from the class
  // column versus table.target_class.
  Dataset transform(const RawTable& table, const std::string& dataset_name) const;
  Dataset transform(const RawTable& table, const std::string& dataset_name,
                    const std::vector<std::size_t>& rows) const;

  std::size_t encoded_dim() const;

 private:
  struct NumericCol {
    std::size_t src = 0;
    double lo = 0.0, hi = 0.0, median = 0.0;
  };
  struct CategoricalCol {
    std::size_t src = 0;
    std::vector<std::string> categories;  // lexicographic order
    bool has_missing = false;             // missing observed at fit time
  };
  std::vector<NumericCol> numeric_;
  std::vector<CategoricalCol> categorical_;
  std::vector<std::size_t> column_order_;  // source columns, class column excluded
  std::vector<std::string> feature_names_;
  friend class EncoderBuilder;
};

// Fit on the positive rows of a binarized table and encode every row.
std::pair<Dataset, Encoder> encode_and_normalize(const RawTable& table,
                                                 const std::string& dataset_name);

// One (train, holdout) split; indices refer to whatever index space the plan
// was built over.
struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;

  bool operator==(const FoldSplit&) const = default;
};

struct CVPlan {
  std::uint64_t seed = 0;
  // repetitions[i] = (fold_A, fold_B) partitioning 0..n-1.
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> repetitions;

  // The 10 (train, test) executions: per repetition, (A,B) then (B,A).
  std::vector<FoldSplit> splits() const;
};

// Dietterich 5x2: five seeded shuffles, each halved into folds that differ in
// size by at most one (fold_A gets the extra element when n is odd).
CVPlan make_5x2_plan(std::size_t n, std::uint64_t seed);

// k-fold partition of the given indices; holdouts are disjoint, cover all
// indices, and their sizes differ by at most one. Both sides of every split
// are emitted in ascending index order.
std::vector<FoldSplit> make_kfold_plan(const std::vector<std::size_t>& indices,
                                       std::size_t k, std::uint64_t seed);

}  // namespace ocen::io
