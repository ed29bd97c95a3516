#ifndef SVMREG_LOSS_HPP
#define SVMREG_LOSS_HPP

#include <algorithm>
#include <limits>
#include <span>
#include <vector>

#include "svmreg/errors.hpp"

namespace svmreg {

// Hinge loss (1 - y f)_+ = max(0, 1 - y f).
inline double hinge_loss(int y, double f) {
  if (y != 1 && y != -1) throw InvalidInput("hinge_loss: label must be +1 or -1");
  return std::max(0.0, 1.0 - static_cast<double>(y) * f);
}

struct HingeSubgradient {
  double g0 = 0.0;
  std::vector<double> g;
};

// One element of the subdifferential of max(0, 1 - y(beta0 + x^T beta)) in
// (beta0, beta). At the kink (margin exactly 1) the zero element is chosen.
inline HingeSubgradient hinge_subgradient(int y, std::span<const double> x, double beta0,
                                          std::span<const double> beta) {
  if (y != 1 && y != -1) throw InvalidInput("hinge_subgradient: label must be +1 or -1");
  if (x.size() != beta.size()) throw InvalidInput("hinge_subgradient: dimension mismatch");
  HingeSubgradient out;
  out.g.assign(x.size(), 0.0);
  double f = beta0;
  for (std::size_t j = 0; j < x.size(); ++j) f += x[j] * beta[j];
  const double margin = static_cast<double>(y) * f;
  if (margin < 1.0) {
    out.g0 = -static_cast<double>(y);
    for (std::size_t j = 0; j < x.size(); ++j) out.g[j] = -static_cast<double>(y) * x[j];
  }
  return out;
}

// Multi-class hinge of Liu and Shen: [1 - min_{c != y} (f_y - f_c)]_+.
inline double multiclass_hinge(std::span<const double> f, int y_class) {
  const int k = static_cast<int>(f.size());
  if (k < 2) throw InvalidInput("multiclass_hinge: need k >= 2 decision values");
  if (y_class < 1 || y_class > k) throw InvalidInput("multiclass_hinge: class out of range");
  const double fy = f[static_cast<std::size_t>(y_class - 1)];
  double min_gap = std::numeric_limits<double>::infinity();
  for (int c = 1; c <= k; ++c) {
    if (c == y_class) continue;
    min_gap = std::min(min_gap, fy - f[static_cast<std::size_t>(c - 1)]);
  }
  return std::max(0.0, 1.0 - min_gap);
}

}  // namespace svmreg

#endif
