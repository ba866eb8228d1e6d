#pragma once

// Core value types shared by every other module: instances, datasets, scores,
// thresholds, votes, and the positives-only training view.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ocen {

enum class Label { positive, negative, unlabeled };

struct Instance {
  std::vector<double> features;
  Label label = Label::unlabeled;
};

struct Dataset {
  std::string name;
  std::vector<std::string> feature_names;
  std::vector<Instance> instances;

  std::size_t size() const { return instances.size(); }
  std::size_t dim() const { return feature_names.size(); }

  // Throws std::invalid_argument on empty data, ragged rows, or non-finite
  // feature values.
  void validate() const;
};

struct Score {
  double value = 0.0;  // in [0, 1]
};

struct Threshold {
  double theta = 0.5;  // in [0, 1]
};

// Indicator I(score >= theta); the boundary is inclusive.
inline int score_to_vote(double score, double theta) { return score >= theta ? 1 : 0; }
inline int score_to_vote(Score s, Threshold t) { return score_to_vote(s.value, t.theta); }

// Non-owning view over the positive instances of a Dataset. Construction
// checks the label census, so any code holding a PositivesView has a
// guarantee that no negative or unlabeled instance can reach a training
// routine.
class PositivesView {
 public:
  // View of all positive instances in ds.
  static PositivesView of(const Dataset& ds);

  // View of a subset given by indices into ds.instances; every referenced
  // instance must be positive (throws std::invalid_argument otherwise).
  PositivesView(const Dataset& ds, std::vector<std::size_t> indices);

  std::size_t size() const { return indices_.size(); }
  std::size_t dim() const { return ds_->dim(); }
  const Dataset& dataset() const { return *ds_; }

  // Row i of the view (0-based within the view).
  const std::vector<double>& row(std::size_t i) const {
    return ds_->instances[indices_[i]].features;
  }
  // Index into the underlying dataset for view row i.
  std::size_t dataset_index(std::size_t i) const { return indices_[i]; }

  // Sub-view given by positions within this view.
  PositivesView subview(const std::vector<std::size_t>& view_positions) const;

 private:
  const Dataset* ds_;
  std::vector<std::size_t> indices_;
};

}  // namespace ocen
