#ifndef SVMREG_DATASET_HPP
#define SVMREG_DATASET_HPP

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "svmreg/errors.hpp"
#include "svmreg/matrix.hpp"

namespace svmreg {

// Labeled dense dataset. Binary problems use labels in {-1,+1}; multi-class
// problems use class indices 1..k.
struct Dataset {
  DenseMatrix x;
  std::vector<int> labels;
  std::vector<std::string> feature_names;  // empty or size p
  // When set, columns [0, relevant_features) are the original features and
  // the rest are appended noise (the contaminated protocol).
  std::optional<std::size_t> relevant_features;

  std::size_t n() const noexcept { return x.rows(); }
  std::size_t p() const noexcept { return x.cols(); }

  bool is_binary() const {
    return std::all_of(labels.begin(), labels.end(),
                       [](int y) { return y == 1 || y == -1; });
  }

  int num_classes() const {
    if (labels.empty()) return 0;
    if (is_binary()) return 2;
    int k = 0;
    for (int y : labels) k = std::max(k, y);
    return k;
  }

  std::vector<std::size_t> class_counts() const {
    std::vector<std::size_t> counts;
    if (is_binary()) {
      counts.assign(2, 0);
      for (int y : labels) ++counts[y == 1 ? 0 : 1];
    } else {
      counts.assign(static_cast<std::size_t>(num_classes()), 0);
      for (int y : labels) ++counts[static_cast<std::size_t>(y - 1)];
    }
    return counts;
  }

  Dataset subset(std::span<const std::size_t> idx) const {
    Dataset out;
    out.x = DenseMatrix(idx.size(), p());
    out.labels.resize(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      auto src = x.row(idx[r]);
      auto dst = out.x.row(r);
      std::copy(src.begin(), src.end(), dst.begin());
      out.labels[r] = labels[idx[r]];
    }
    out.feature_names = feature_names;
    out.relevant_features = relevant_features;
    return out;
  }
};

inline void validate_binary(const Dataset& ds) {
  if (ds.n() == 0) throw InvalidInput("dataset is empty");
  if (ds.labels.size() != ds.n()) throw InvalidInput("label count != row count");
  bool pos = false, neg = false;
  for (int y : ds.labels) {
    if (y == 1)
      pos = true;
    else if (y == -1)
      neg = true;
    else
      throw InvalidInput("binary labels must be +1 or -1");
  }
  if (!pos || !neg) throw InvalidInput("binary training data must contain both classes");
}

inline void validate_multiclass(const Dataset& ds, int k) {
  if (ds.n() == 0) throw InvalidInput("dataset is empty");
  if (k < 2) throw InvalidInput("multi-class data needs k >= 2");
  std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
  for (int y : ds.labels) {
    if (y < 1 || y > k) throw InvalidInput("class labels must lie in 1..k");
    ++counts[static_cast<std::size_t>(y - 1)];
  }
  for (int c = 0; c < k; ++c)
    if (counts[static_cast<std::size_t>(c)] == 0)
      throw InvalidInput("class " + std::to_string(c + 1) + " has no training instances");
}

}  // namespace svmreg

#endif
