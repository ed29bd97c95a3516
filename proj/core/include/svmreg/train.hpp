#ifndef SVMREG_TRAIN_HPP
#define SVMREG_TRAIN_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "svmreg/dataset.hpp"
#include "svmreg/model.hpp"

namespace svmreg {

struct TrainOptions {
  SolverConfig solver;
  StandardizeMode standardize = StandardizeMode::None;  // fit on training data only
  bool exact_lp = false;  // L1: solve the compiled LP instead of iterating
  int jobs = 1;           // parallel one-vs-all subproblems / path points
};

// Binary trainer; dispatches on the penalty:
//   L2 / L1 / ElasticNet -> proximal subgradient
//   KSupport             -> accelerated subgradient
//   L1 with exact_lp     -> simplex on the compiled LP (exact zeros)
LinearModel train_binary(const Dataset& ds, const PenaltySpec& penalty,
                         const TrainOptions& opts = {});

// One binary subproblem per class (class c vs rest, positives = c).
MultiClassModel train_ova(const Dataset& ds, const PenaltySpec& penalty,
                          const TrainOptions& opts = {});

// All-in-one multi-class L1 SVM solved as a single LP; coefficients satisfy
// the sum-to-zero rows and carry exact zeros.
MultiClassModel train_l1msvm(const Dataset& ds, double lambda, const TrainOptions& opts = {});

struct PathRow {
  double lambda = 0.0;
  double beta0 = 0.0;
  std::vector<double> beta;
  std::size_t nonzeros = 0;
};

struct PathResult {
  std::vector<PathRow> rows;
  bool grid_was_unsorted = false;
};

// One fit per grid value (descending order; unsorted grids are sorted and
// flagged), grid applied to the penalty's primary weight. Iterative fits are
// warm-started from the previous (larger) grid point.
PathResult regularization_path(const Dataset& ds, const PenaltySpec& family,
                               std::vector<double> grid, const TrainOptions& opts = {});

// Nonzero threshold for iterative solutions; LP solutions carry exact zeros
// so any threshold below the smallest true coefficient gives the same count.
inline bool is_nonzero_coefficient(double value, double max_abs) {
  return std::abs(value) > 1e-4 * std::max(1.0, max_abs);
}

std::size_t count_nonzero(std::span<const double> beta);

struct NonzeroCounts {
  std::size_t total = 0;
  std::size_t relevant = 0;
  std::size_t nonrelevant = 0;
  bool has_split = false;
};

// `split`: number of leading "relevant" columns (from Dataset::relevant_features).
NonzeroCounts count_nonzero(std::span<const double> beta, std::optional<std::size_t> split);

// Union of per-class selections: a feature counts as selected by a
// multi-class model when any class selects it.
NonzeroCounts count_nonzero(const MultiClassModel& model, std::optional<std::size_t> split);
NonzeroCounts count_nonzero(const LinearModel& model, std::optional<std::size_t> split);

// Mean per-class nonzero count (the "# features (binary)" aggregation).
double mean_binary_nonzeros(const MultiClassModel& model);

// A trainable pipeline: binary penalties, their one-vs-all wrappers, or the
// all-in-one multi-class L1 SVM.
enum class ModelFamily { L2, L1, ElasticNet, KSupport, OvaL2, OvaL1, OvaElasticNet, OvaKSupport, L1Msvm };

bool family_is_multiclass(ModelFamily family);
PenaltyKind family_penalty_kind(ModelFamily family);
ModelFamily family_from_string(const std::string& name);
const char* to_string(ModelFamily family);

// Model wrapper for code that is generic over binary/multi-class pipelines.
struct AnyModel {
  AnyModelVariant model;

  int predict(std::span<const double> x) const;
  NonzeroCounts nonzeros(std::optional<std::size_t> split) const;
  double mean_binary_nonzeros() const;
};

AnyModel train_any(const Dataset& ds, ModelFamily family, const PenaltySpec& spec,
                   const TrainOptions& opts = {});

}  // namespace svmreg

#endif
