#include "ocen/data.hpp"

#include <cmath>

namespace ocen {

void Dataset::validate() const {
  if (instances.empty()) throw std::invalid_argument("dataset '" + name + "' is empty");
  const std::size_t d = feature_names.size();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (instances[i].features.size() != d) {
      throw std::invalid_argument("dataset '" + name + "': instance " + std::to_string(i) +
                                  " has dimension " +
                                  std::to_string(instances[i].features.size()) +
                                  ", expected " + std::to_string(d));
    }
    for (double v : instances[i].features) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("dataset '" + name + "': instance " +
                                    std::to_string(i) + " has a non-finite feature");
      }
    }
  }
}

PositivesView PositivesView::of(const Dataset& ds) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < ds.instances.size(); ++i) {
    if (ds.instances[i].label == Label::positive) idx.push_back(i);
  }
  return PositivesView(ds, std::move(idx));
}

PositivesView::PositivesView(const Dataset& ds, std::vector<std::size_t> indices)
    : ds_(&ds), indices_(std::move(indices)) {
  for (std::size_t i : indices_) {
    if (i >= ds.instances.size()) {
      throw std::invalid_argument("positives view: index " + std::to_string(i) +
                                  " out of range");
    }
    if (ds.instances[i].label != Label::positive) {
      throw std::invalid_argument("positives view: instance " + std::to_string(i) +
                                  " is not positive");
    }
  }
}

PositivesView PositivesView::subview(const std::vector<std::size_t>& view_positions) const {
  std::vector<std::size_t> idx;
  idx.reserve(view_positions.size());
  for (std::size_t p : view_positions) {
    if (p >= indices_.size()) {
      throw std::invalid_argument("positives subview: position " + std::to_string(p) +
                                  " out of range");
    }
    idx.push_back(indices_[p]);
  }
  return PositivesView(*ds_, std::move(idx));
}

}  // namespace ocen
