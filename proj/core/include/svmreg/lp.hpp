#ifndef SVMREG_LP_HPP
#define SVMREG_LP_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "svmreg/matrix.hpp"

namespace svmreg {

enum class RowSense { LessEqual, Equal };

// min c^T z  s.t.  A z {<=,=} b,  z >= 0.
struct StandardFormLP {
  std::vector<double> objective;
  DenseMatrix constraints;  // rows x num_vars
  std::vector<double> rhs;
  std::vector<RowSense> senses;

  // Optional crash basis, one entry per row: a structural column index whose
  // elimination yields a feasible starting basis, or -1 to let the solver use
  // the row's own slack/surplus/artificial. Validated numerically; the solver
  // falls back to plain two-phase if the hinted basis is infeasible.
  std::vector<int> basis_hint;

  std::vector<std::string> var_names;  // optional, used by dump_lp

  std::size_t num_vars() const { return objective.size(); }
  std::size_t num_rows() const { return rhs.size(); }
  void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  std::vector<double> values;  // structural variables, empty unless optimal
  double objective = 0.0;
  std::size_t iterations = 0;
};

// Entering-variable rule. Both are deterministic; Bland never cycles, and
// Dantzig switches to Bland permanently within a phase after a stretch of
// degenerate pivots, so termination holds either way.
enum class PivotRule { Bland, DantzigBland };

struct SimplexOptions {
  PivotRule rule = PivotRule::Bland;
  std::size_t iteration_cap_factor = 50;  // cap = factor * (rows + cols)
  double tol = 1e-9;
};

// Dense tableau two-phase simplex. Optimal solutions are basic feasible
// solutions, so unneeded coefficients come out exactly zero. Throws
// SimplexIterationLimit past the iteration cap.
LPSolution simplex_solve(const StandardFormLP& lp, const SimplexOptions& options = {});

// Human-readable problem listing for diagnosing compiled LPs.
void dump_lp(const StandardFormLP& lp, std::ostream& os);

const char* to_string(LPStatus status);

}  // namespace svmreg

#endif
