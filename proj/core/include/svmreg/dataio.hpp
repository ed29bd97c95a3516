#ifndef SVMREG_DATAIO_HPP
#define SVMREG_DATAIO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "svmreg/dataset.hpp"
#include "svmreg/train.hpp"

namespace svmreg {

struct LoadOptions {
  std::size_t label_column = 0;
  char delimiter = ',';
  bool header = true;
  // Textual binary labels map through this name (positive class); there is
  // deliberately no implicit alphabetical rule.
  std::string positive_label;
};

// Delimited text (UTF-8, full-precision floats). Numeric labels must be
// +-1 (binary) or 1..k (multi-class).
Dataset load_delimited(const std::string& path, const LoadOptions& opts = {});
Dataset parse_delimited(std::istream& is, const LoadOptions& opts, const std::string& origin);
void save_delimited(const Dataset& ds, const std::string& path, char delimiter = ',');
void write_delimited(const Dataset& ds, std::ostream& os, char delimiter = ',');

// Sparse "label idx:val idx:val" lines, 1-based strictly increasing indices;
// missing entries are zero.
Dataset load_sparse_text(const std::string& path);
Dataset parse_sparse_text(std::istream& is, const std::string& origin);
void write_sparse_text(const Dataset& ds, std::ostream& os);

enum class SplitKind { Holdout, KFold, LeaveOneOut };

struct SplitSpec {
  SplitKind kind = SplitKind::KFold;
  double holdout_fraction = 1.0 / 3.0;  // test share
  std::size_t folds = 10;
  std::uint64_t seed = 0;
  bool stratified = true;

  static SplitSpec holdout(double fraction, std::uint64_t seed, bool stratified = true);
  static SplitSpec kfold(std::size_t k, std::uint64_t seed, bool stratified = true);
  static SplitSpec loo();
};

struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Disjoint, exhaustive index partitions; stratified splits keep class
// proportions within one instance per class per fold.
std::vector<FoldSplit> split(const Dataset& ds, const SplitSpec& spec);

struct GridSpec {
  std::vector<double> lambda;   // L2 / L1 / KSupport / L1MSVM weights
  std::vector<double> lambda1;  // elastic net
  std::vector<double> lambda2;
  std::vector<int> k;           // KSupport

  // 9 log-spaced points per weight over [1e-4, 1e4]; k defaults to a short
  // list spread over [1, p].
  static GridSpec defaults_for(PenaltyKind kind, std::size_t p);
  std::vector<PenaltySpec> expand(PenaltyKind kind) const;
};

std::vector<double> log_grid(double lo, double hi, std::size_t points);

struct CvCell {
  std::size_t grid_index = 0;
  std::size_t fold = 0;
  double accuracy = 0.0;
  std::string error;  // empty on success
};

struct CvPointScore {
  PenaltySpec spec;
  double mean_accuracy = 0.0;
  std::size_t failed_folds = 0;
};

struct CvResult {
  PenaltySpec best;
  double best_accuracy = 0.0;
  std::size_t best_index = 0;
  std::vector<CvPointScore> points;
  std::vector<CvCell> table;  // |grid| x folds cells
};

// Grid search over `grid`, scoring mean validation accuracy per point under
// the split. Ties prefer the larger primary regularization weight (sparser
// model), then earlier grid enumeration order. Standardization, when enabled
// in `opts`, is fit per training fold only.
CvResult grid_search_cv(const Dataset& ds, ModelFamily family, const GridSpec& grid,
                        const SplitSpec& split_spec, const TrainOptions& opts = {});

}  // namespace svmreg

#endif
