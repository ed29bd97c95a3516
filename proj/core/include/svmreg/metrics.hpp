#ifndef SVMREG_METRICS_HPP
#define SVMREG_METRICS_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include "svmreg/dataset.hpp"
#include "svmreg/train.hpp"

namespace svmreg {

// Evaluation summary; the *_std fields are zero until aggregate_repetitions
// fills them (sample standard deviation, n-1 denominator).
struct EvalReport {
  double accuracy = 0.0;
  DenseMatrix confusion;  // actual x predicted; class order +1,-1 (binary) or 1..k
  double nonzero_total = 0.0;
  double nonzero_relevant = 0.0;
  double nonzero_nonrelevant = 0.0;
  bool has_split = false;
  double binary_feature_mean = 0.0;  // mean per-class count for multi-class models

  std::size_t repetitions = 1;
  double accuracy_std = 0.0;
  double nonzero_total_std = 0.0;
  double nonzero_relevant_std = 0.0;
  double nonzero_nonrelevant_std = 0.0;
  double binary_feature_std = 0.0;
};

EvalReport evaluate(const LinearModel& model, const Dataset& test);
EvalReport evaluate(const MultiClassModel& model, const Dataset& test);
EvalReport evaluate(const AnyModel& model, const Dataset& test);

// Per-metric mean and sample standard deviation over repetitions; confusion
// matrices are averaged elementwise. A single report aggregates to itself
// with std 0.
EvalReport aggregate_repetitions(std::span<const EvalReport> reports);

// One record per feature pair of the elastic-net grouping inequality
// |beta_j - beta_l| <= (sqrt(n)/lambda2) sqrt(2 (1 - rho_jl)) + epsilon,
// evaluated on the standardized training data the solver saw.
struct GroupingPair {
  std::size_t j = 0;
  std::size_t l = 0;
  double rho = 0.0;
  double gap = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // bound + epsilon - gap, nonnegative iff pass
  bool pass = false;
};

struct GroupingAudit {
  double lambda2 = 0.0;
  double epsilon = 0.0;
  std::size_t n = 0;
  std::vector<GroupingPair> pairs;
  bool all_pass = true;
};

// `standardized` must be the training matrix actually fed to the solver
// (unit-l2 columns for the bound to be meaningful). The model must be
// elastic-net trained; epsilon absorbs solver sub-optimality.
GroupingAudit grouping_audit(const LinearModel& model, const Dataset& standardized,
                             double lambda2, double epsilon);

// Default audit slack for a solver run at tolerance tau on n instances.
inline double grouping_epsilon(double solver_tolerance, std::size_t n) {
  return 10.0 * solver_tolerance * static_cast<double>(n);
}

void write_audit_csv(const GroupingAudit& audit, std::ostream& os);
void write_report_summary(const EvalReport& report, std::ostream& os);

}  // namespace svmreg

#endif
