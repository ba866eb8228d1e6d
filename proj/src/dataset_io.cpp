#include "ocen/dataset_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "ocen/rng.hpp"

namespace ocen::io {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == delim) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

bool parse_number(const std::string& s, double* out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end != s.c_str() + s.size() || !std::isfinite(v)) return false;
  *out = v;
  return true;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

bool RawTable::is_positive_row(std::size_t r) const {
  const auto& cell = cells[r][class_column];
  return cell.has_value() && *cell == target_class;
}

RawTable load_csv(const std::string& path, const std::string& class_column,
                  const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw DataError("'" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  RawTable table;
  table.column_names = split_line(line, options.delimiter);
  const std::size_t ncols = table.column_names.size();

  // Resolve the class column: header name first, then a 0-based index.
  auto it = std::find(table.column_names.begin(), table.column_names.end(), class_column);
  if (it != table.column_names.end()) {
    table.class_column = static_cast<std::size_t>(it - table.column_names.begin());
  } else {
    double idx = 0.0;
    if (!parse_number(class_column, &idx) || idx != std::floor(idx) || idx < 0 ||
        idx >= static_cast<double>(ncols)) {
      throw DataError("unknown class column '" + class_column + "' in '" + path + "'");
    }
    table.class_column = static_cast<std::size_t>(idx);
  }

  std::size_t row_index = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && row_index == 0 && in.eof()) break;
    auto cells = split_line(line, options.delimiter);
    if (cells.size() == 1 && cells[0].empty()) continue;  // skip blank lines
    if (cells.size() != ncols) {
      throw DataError("ragged row " + std::to_string(row_index) + " in '" + path +
                      "': " + std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(ncols));
    }
    std::vector<std::optional<std::string>> row(ncols);
    for (std::size_t c = 0; c < ncols; ++c) {
      if (options.missing_tokens.count(cells[c])) {
        row[c] = std::nullopt;
      } else {
        row[c] = cells[c];
      }
    }
    table.cells.push_back(std::move(row));
    ++row_index;
  }
  if (table.cells.empty()) throw DataError("'" + path + "' has no data rows");

  // Kind inference: numeric iff every non-missing cell parses as a real.
  table.kinds.assign(ncols, ColumnKind::numeric);
  for (std::size_t c = 0; c < ncols; ++c) {
    bool any_value = false;
    for (const auto& row : table.cells) {
      if (!row[c].has_value()) continue;
      any_value = true;
      double v = 0.0;
      if (!parse_number(*row[c], &v)) {
        table.kinds[c] = ColumnKind::categorical;
        break;
      }
    }
    if (!any_value) table.kinds[c] = ColumnKind::categorical;
  }
  for (const auto& [name, kind] : options.kind_overrides) {
    auto pos = std::find(table.column_names.begin(), table.column_names.end(), name);
    if (pos == table.column_names.end()) {
      throw DataError("kind override for unknown column '" + name + "'");
    }
    table.kinds[static_cast<std::size_t>(pos - table.column_names.begin())] = kind;
  }
  return table;
}

RawTable binarize(const RawTable& table, const std::string& target_override) {
  std::map<std::string, std::size_t> counts;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const auto& cell = table.cells[r][table.class_column];
    if (!cell.has_value()) {
      throw DataError("missing class value at row " + std::to_string(r));
    }
    ++counts[*cell];
  }
  if (counts.size() < 2) {
    throw DataError("binarize requires at least 2 distinct classes, found " +
                    std::to_string(counts.size()));
  }
  // Order by count descending, ties by lexicographic name.
  std::vector<std::pair<std::string, std::size_t>> ordered(counts.begin(), counts.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  const std::string keep_a = ordered[0].first;
  const std::string keep_b = ordered[1].first;

  RawTable out;
  out.column_names = table.column_names;
  out.kinds = table.kinds;
  out.class_column = table.class_column;
  out.target_class = keep_a;
  if (!target_override.empty()) {
    if (target_override != keep_a && target_override != keep_b) {
      throw DataError("target class override '" + target_override +
                      "' is not one of the two most frequent classes ('" + keep_a +
                      "', '" + keep_b + "')");
    }
    out.target_class = target_override;
  }
  for (const auto& row : table.cells) {
    const std::string& cls = *row[table.class_column];
    if (cls == keep_a || cls == keep_b) out.cells.push_back(row);
  }
  return out;
}

Encoder Encoder::fit(const RawTable& table, const std::vector<std::size_t>& fit_rows) {
  if (fit_rows.empty()) throw DataError("encoder fit requires at least one row");
  Encoder enc;
  for (std::size_t c = 0; c < table.cols(); ++c) {
    if (c == table.class_column) continue;
    enc.column_order_.push_back(c);
    if (table.kinds[c] == ColumnKind::numeric) {
      std::vector<double> values;
      for (std::size_t r : fit_rows) {
        const auto& cell = table.cells[r][c];
        if (!cell.has_value()) continue;
        double v = 0.0;
        if (!parse_number(*cell, &v)) {
          throw DataError("non-numeric cell '" + *cell + "' in numeric column '" +
                          table.column_names[c] + "' at row " + std::to_string(r));
        }
        values.push_back(v);
      }
      if (values.empty()) {
        throw DataError("column '" + table.column_names[c] +
                        "' is entirely missing in the fit rows");
      }
      NumericCol col;
      col.src = c;
      col.lo = *std::min_element(values.begin(), values.end());
      col.hi = *std::max_element(values.begin(), values.end());
      col.median = median_of(values);
      enc.numeric_.push_back(col);
      enc.feature_names_.push_back(table.column_names[c]);
    } else {
      CategoricalCol col;
      col.src = c;
      std::set<std::string> cats;
      for (std::size_t r : fit_rows) {
        const auto& cell = table.cells[r][c];
        if (cell.has_value()) {
          cats.insert(*cell);
        } else {
          col.has_missing = true;
        }
      }
      if (cats.empty() && !col.has_missing) {
        throw DataError("column '" + table.column_names[c] + "' has no fit values");
      }
      col.categories.assign(cats.begin(), cats.end());
      for (const auto& cat : col.categories) {
        enc.feature_names_.push_back(table.column_names[c] + "=" + cat);
      }
      if (col.has_missing) {
        enc.feature_names_.push_back(table.column_names[c] + "=<missing>");
      }
      enc.categorical_.push_back(col);
    }
  }
  return enc;
}

std::size_t Encoder::encoded_dim() const { return feature_names_.size(); }

Dataset Encoder::transform(const RawTable& table, const std::string& dataset_name) const {
  std::vector<std::size_t> rows(table.rows());
  std::iota(rows.begin(), rows.end(), 0);
  return transform(table, dataset_name, rows);
}

Dataset Encoder::transform(const RawTable& table, const std::string& dataset_name,
                           const std::vector<std::size_t>& rows) const {
  Dataset ds;
  ds.name = dataset_name;
  ds.feature_names = feature_names_;
  ds.instances.reserve(rows.size());
  for (std::size_t r : rows) {
    Instance inst;
    inst.features.reserve(feature_names_.size());
    std::size_t num_i = 0, cat_i = 0;
    for (std::size_t c : column_order_) {
      if (table.kinds[c] == ColumnKind::numeric) {
        const NumericCol& col = numeric_[num_i++];
        const auto& cell = table.cells[r][c];
        double v = col.median;
        if (cell.has_value() && !parse_number(*cell, &v)) {
          throw DataError("non-numeric cell '" + *cell + "' in numeric column '" +
                          table.column_names[c] + "' at row " + std::to_string(r));
        }
        double scaled = col.hi > col.lo ? (v - col.lo) / (col.hi - col.lo) : 0.0;
        inst.features.push_back(std::clamp(scaled, 0.0, 1.0));
      } else {
        const CategoricalCol& col = categorical_[cat_i++];
        const auto& cell = table.cells[r][c];
        for (const auto& cat : col.categories) {
          inst.features.push_back(cell.has_value() && *cell == cat ? 1.0 : 0.0);
        }
        if (col.has_missing) {
          inst.features.push_back(cell.has_value() ? 0.0 : 1.0);
        }
      }
    }
    const auto& cls = table.cells[r][table.class_column];
    inst.label = (cls.has_value() && *cls == table.target_class) ? Label::positive
                                                                 : Label::negative;
    ds.instances.push_back(std::move(inst));
  }
  ds.validate();
  return ds;
}

std::pair<Dataset, Encoder> encode_and_normalize(const RawTable& table,
                                                 const std::string& dataset_name) {
  if (table.target_class.empty()) {
    throw DataError("encode_and_normalize requires a binarized table");
  }
  std::vector<std::size_t> positive_rows;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    if (table.is_positive_row(r)) positive_rows.push_back(r);
  }
  Encoder enc = Encoder::fit(table, positive_rows);
  Dataset ds = enc.transform(table, dataset_name);
  return {std::move(ds), std::move(enc)};
}

std::vector<FoldSplit> CVPlan::splits() const {
  std::vector<FoldSplit> out;
  out.reserve(repetitions.size() * 2);
  for (const auto& [a, b] : repetitions) {
    out.push_back({a, b});
    out.push_back({b, a});
  }
  return out;
}

CVPlan make_5x2_plan(std::size_t n, std::uint64_t seed) {
  if (n < 4) {
    throw std::invalid_argument("5x2 plan requires n >= 4, got " + std::to_string(n));
  }
  CVPlan plan;
  plan.seed = seed;
  for (std::size_t rep = 0; rep < 5; ++rep) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(mix_seed(seed, rep));
    rng.shuffle(idx);
    const std::size_t half = (n + 1) / 2;
    std::vector<std::size_t> a(idx.begin(), idx.begin() + half);
    std::vector<std::size_t> b(idx.begin() + half, idx.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    plan.repetitions.emplace_back(std::move(a), std::move(b));
  }
  return plan;
}

std::vector<FoldSplit> make_kfold_plan(const std::vector<std::size_t>& indices,
                                       std::size_t k, std::uint64_t seed) {
  const std::size_t n = indices.size();
  if (k < 2) throw std::invalid_argument("k-fold plan requires k >= 2");
  if (k > n) {
    throw std::invalid_argument("k-fold plan: k = " + std::to_string(k) +
                                " exceeds " + std::to_string(n) + " indices");
  }
  std::vector<std::size_t> shuffled = indices;
  Rng rng(mix_seed(seed, 0x6b666f6cULL));  // stream tag for fold plans
  rng.shuffle(shuffled);

  std::vector<FoldSplit> folds(k);
  std::size_t start = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= start && i < start + size) {
        folds[f].test.push_back(shuffled[i]);
      } else {
        folds[f].train.push_back(shuffled[i]);
      }
    }
    std::sort(folds[f].test.begin(), folds[f].test.end());
    std::sort(folds[f].train.begin(), folds[f].train.end());
    start += size;
  }
  return folds;
}

}  // namespace ocen::io
