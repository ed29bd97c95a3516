#include "svmreg/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "svmreg/errors.hpp"

namespace svmreg {

void StandardFormLP::validate() const {
  const std::size_t n = num_vars();
  const std::size_t m = num_rows();
  if (n == 0) throw InvalidInput("lp: no variables");
  if (constraints.rows() != m || (m > 0 && constraints.cols() != n))
    throw InvalidInput("lp: constraint matrix dimensions inconsistent");
  if (senses.size() != m) throw InvalidInput("lp: sense count != row count");
  for (double b : rhs)
    if (!std::isfinite(b)) throw InvalidInput("lp: rhs must be finite");
  for (double c : objective)
    if (!std::isfinite(c)) throw InvalidInput("lp: objective must be finite");
  if (!basis_hint.empty()) {
    if (basis_hint.size() != m) throw InvalidInput("lp: basis hint size != row count");
    for (int h : basis_hint)
      if (h < -1 || h >= static_cast<int>(n))
        throw InvalidInput("lp: basis hint out of range");
  }
}

namespace {

enum class ColKind : unsigned char { Structural, Slack, Surplus, Artificial };

// Dense tableau with the cost row stored as row m. Column layout:
// structural | slacks | surpluses | artificials | rhs.
class Tableau {
 public:
  Tableau(const StandardFormLP& lp, const SimplexOptions& opt, bool use_hint)
      : lp_(lp), opt_(opt), m_(lp.num_rows()), nstruct_(lp.num_vars()) {
    build(use_hint);
  }

  bool crash_failed() const { return crash_failed_; }

  LPSolution run() {
    iteration_cap_ = opt_.iteration_cap_factor * (m_ + ncols_);

    double art_load = 0.0;
    for (std::size_t r = 0; r < m_; ++r)
      if (kind_[static_cast<std::size_t>(basis_[r])] == ColKind::Artificial)
        art_load += rhs(r);

    if (art_load > 1e-11) {
      std::vector<double> phase1_cost(ncols_, 0.0);
      for (std::size_t j = 0; j < ncols_; ++j)
        if (kind_[j] == ColKind::Artificial) phase1_cost[j] = 1.0;
      install_cost_row(phase1_cost);
      const PhaseExit exit = iterate(/*phase1=*/true);
      if (exit == PhaseExit::NoEnteringColumn || exit == PhaseExit::ObjectiveFloor) {
        if (objective_value() > 1e-7) return make_result(LPStatus::Infeasible);
      }
    }
    drive_out_artificials();
    for (std::size_t j = 0; j < ncols_; ++j)
      if (kind_[j] == ColKind::Artificial) banned_[j] = 1;

    std::vector<double> cost(ncols_, 0.0);
    std::copy(lp_.objective.begin(), lp_.objective.end(), cost.begin());
    install_cost_row(cost);
    const PhaseExit exit = iterate(/*phase1=*/false);
    if (exit == PhaseExit::Unbounded) return make_result(LPStatus::Unbounded);
    return make_result(LPStatus::Optimal);
  }

 private:
  enum class PhaseExit { NoEnteringColumn, Unbounded, ObjectiveFloor };

  double* row(std::size_t r) { return tab_.data() + r * width_; }
  const double* row(std::size_t r) const { return tab_.data() + r * width_; }
  double rhs(std::size_t r) const { return tab_[r * width_ + width_ - 1]; }
  double* cost_row() { return row(m_); }
  double objective_value() { return -cost_row()[width_ - 1]; }

  void build(bool use_hint) {
    const std::size_t n = nstruct_;
    // Normalize to nonnegative rhs; flipped LessEqual rows become >= rows.
    flipped_.assign(m_, 0);
    std::vector<int> internal_sense(m_);  // 0 <=, 1 >=, 2 =
    for (std::size_t r = 0; r < m_; ++r) {
      const bool flip = lp_.rhs[r] < 0.0;
      flipped_[r] = flip;
      if (lp_.senses[r] == RowSense::Equal)
        internal_sense[r] = 2;
      else
        internal_sense[r] = flip ? 1 : 0;
    }

    std::vector<int> hint(m_, -1);
    if (use_hint && !lp_.basis_hint.empty())
      for (std::size_t r = 0; r < m_; ++r) hint[r] = lp_.basis_hint[r];

    // Column layout.
    std::vector<int> slack_col(m_, -1), aux_basis(m_, -1);
    std::size_t col = n;
    for (std::size_t r = 0; r < m_; ++r)
      if (internal_sense[r] == 0) slack_col[r] = static_cast<int>(col++);
    std::vector<int> surplus_col(m_, -1);
    for (std::size_t r = 0; r < m_; ++r)
      if (internal_sense[r] == 1) surplus_col[r] = static_cast<int>(col++);
    std::vector<int> art_col(m_, -1);
    for (std::size_t r = 0; r < m_; ++r) {
      const bool wants_artificial =
          internal_sense[r] == 2 ? hint[r] < 0
          : internal_sense[r] == 1 && !(use_hint && !lp_.basis_hint.empty());
      if (wants_artificial && hint[r] < 0) art_col[r] = static_cast<int>(col++);
    }
    ncols_ = col;
    width_ = ncols_ + 1;

    kind_.assign(ncols_, ColKind::Structural);
    for (std::size_t r = 0; r < m_; ++r) {
      if (slack_col[r] >= 0) kind_[static_cast<std::size_t>(slack_col[r])] = ColKind::Slack;
      if (surplus_col[r] >= 0) kind_[static_cast<std::size_t>(surplus_col[r])] = ColKind::Surplus;
      if (art_col[r] >= 0) kind_[static_cast<std::size_t>(art_col[r])] = ColKind::Artificial;
    }

    tab_.assign((m_ + 1) * width_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      double* tr = row(r);
      const double sgn = flipped_[r] ? -1.0 : 1.0;
      const auto src = lp_.constraints.row(r);
      for (std::size_t j = 0; j < n; ++j) tr[j] = sgn * src[j];
      if (slack_col[r] >= 0) tr[static_cast<std::size_t>(slack_col[r])] = 1.0;
      if (surplus_col[r] >= 0) tr[static_cast<std::size_t>(surplus_col[r])] = -1.0;
      if (art_col[r] >= 0) tr[static_cast<std::size_t>(art_col[r])] = 1.0;
      tr[width_ - 1] = sgn * lp_.rhs[r];
    }

    for (std::size_t r = 0; r < m_; ++r) {
      if (internal_sense[r] == 0)
        aux_basis[r] = slack_col[r];
      else if (internal_sense[r] == 1)
        aux_basis[r] = art_col[r] >= 0 ? art_col[r] : surplus_col[r];
      else
        aux_basis[r] = art_col[r];  // -1 when a structural hint covers the row
    }

    basis_.assign(m_, -1);
    is_basic_.assign(ncols_, 0);
    banned_.assign(ncols_, 0);
    crash_failed_ = false;

    // Establish the starting basis by pivoting each row on its target column.
    for (std::size_t r = 0; r < m_; ++r) {
      const int target = hint[r] >= 0 ? hint[r] : aux_basis[r];
      if (target < 0) {
        crash_failed_ = true;
        return;
      }
      const std::size_t tc = static_cast<std::size_t>(target);
      const double entry = row(r)[tc];
      if (std::abs(entry) < 1e-9) {
        crash_failed_ = true;
        return;
      }
      if (entry == 1.0 && column_singleton(tc, r)) {
        basis_[r] = target;
        is_basic_[tc] = 1;
      } else {
        pivot(r, tc);
      }
    }
    for (std::size_t r = 0; r < m_; ++r) {
      double& b = tab_[r * width_ + width_ - 1];
      if (b < 0.0 && b > -1e-9) b = 0.0;
      if (b < 0.0) {
        crash_failed_ = true;
        return;
      }
    }
  }

  bool column_singleton(std::size_t c, std::size_t owner) const {
    for (std::size_t r = 0; r < m_; ++r)
      if (r != owner && row(r)[c] != 0.0) return false;
    return true;
  }

  void install_cost_row(const std::vector<double>& c) {
    double* cr = cost_row();
    std::fill(cr, cr + width_, 0.0);
    std::copy(c.begin(), c.end(), cr);
    double obj = 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = c[static_cast<std::size_t>(basis_[r])];
      if (cb == 0.0) continue;
      const double* tr = row(r);
      for (std::size_t j = 0; j < width_; ++j) cr[j] -= cb * tr[j];
      obj += cb * rhs(r);
    }
    cr[width_ - 1] = -obj;
  }

  void pivot(std::size_t pr, std::size_t pc) {
    double* prow = row(pr);
    const double inv = 1.0 / prow[pc];
    for (std::size_t j = 0; j < width_; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      double* tr = row(r);
      const double f = tr[pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) tr[j] -= f * prow[j];
      tr[pc] = 0.0;
    }
    if (basis_[pr] >= 0) is_basic_[static_cast<std::size_t>(basis_[pr])] = 0;
    basis_[pr] = static_cast<int>(pc);
    is_basic_[pc] = 1;
  }

  // Entering column under the active rule; -1 when optimal.
  int entering_column(bool bland) {
    const double* cr = cost_row();
    if (bland) {
      for (std::size_t j = 0; j < ncols_; ++j)
        if (!banned_[j] && !is_basic_[j] && cr[j] < -opt_.tol) return static_cast<int>(j);
      return -1;
    }
    int best = -1;
    double best_rc = -opt_.tol;
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (banned_[j] || is_basic_[j]) continue;
      if (cr[j] < best_rc) {
        best_rc = cr[j];
        best = static_cast<int>(j);
      }
    }
    return best;
  }

  // Minimum-ratio leaving row; -1 when the column is unbounded. Ties resolve
  // to artificial rows first (outside Bland mode), then the smallest basic
  // variable index, which is exactly Bland's leaving rule.
  int leaving_row(std::size_t pc, bool bland) {
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < m_; ++r) {
      const double a = row(r)[pc];
      if (a <= opt_.tol) continue;
      const double ratio = rhs(r) / a;
      if (ratio < best_ratio - 1e-12) {
        best_ratio = ratio;
        best = static_cast<int>(r);
      } else if (ratio <= best_ratio + 1e-12 && best >= 0) {
        const std::size_t rb = static_cast<std::size_t>(basis_[r]);
        const std::size_t bb = static_cast<std::size_t>(basis_[static_cast<std::size_t>(best)]);
        if (!bland) {
          const bool r_art = kind_[rb] == ColKind::Artificial;
          const bool b_art = kind_[bb] == ColKind::Artificial;
          if (r_art != b_art) {
            if (r_art) best = static_cast<int>(r);
            continue;
          }
        }
        if (rb < bb) best = static_cast<int>(r);
      }
    }
    return best;
  }

  PhaseExit iterate(bool phase1) {
    bool bland = opt_.rule == PivotRule::Bland;
    std::size_t degenerate_run = 0;
    double last_obj = objective_value();
    for (;;) {
      if (phase1 && last_obj < 1e-11) return PhaseExit::ObjectiveFloor;
      const int pc = entering_column(bland);
      if (pc < 0) return PhaseExit::NoEnteringColumn;
      const int pr = leaving_row(static_cast<std::size_t>(pc), bland);
      if (pr < 0) {
        if (phase1)
          throw NumericalError("simplex: phase-1 column unbounded (numerical breakdown)");
        return PhaseExit::Unbounded;
      }
      pivot(static_cast<std::size_t>(pr), static_cast<std::size_t>(pc));
      if (++iterations_ > iteration_cap_)
        throw SimplexIterationLimit(
            iterations_,
            "simplex: iteration cap exceeded (phase " + std::string(phase1 ? "1" : "2") +
                ", objective " + std::to_string(objective_value()) + ", " +
                std::to_string(basic_artificial_count()) + " artificials basic)");
      const double obj = objective_value();
      if (opt_.rule == PivotRule::DantzigBland) {
        if (obj < last_obj - 1e-12 * std::max(1.0, std::abs(last_obj))) {
          degenerate_run = 0;
          bland = false;
        } else if (!bland && ++degenerate_run >= 50) {
          bland = true;  // cycling guard
        }
      }
      last_obj = obj;
    }
  }

  std::size_t basic_artificial_count() const {
    std::size_t c = 0;
    for (std::size_t r = 0; r < m_; ++r)
      if (kind_[static_cast<std::size_t>(basis_[r])] == ColKind::Artificial) ++c;
    return c;
  }

  // Pivot zero-valued basic artificials out on any usable column; rows with
  // no such column are redundant and stay inert.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (kind_[static_cast<std::size_t>(basis_[r])] != ColKind::Artificial) continue;
      const double* tr = row(r);
      int target = -1;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (kind_[j] == ColKind::Artificial || is_basic_[j]) continue;
        if (std::abs(tr[j]) > 1e-7) {
          target = static_cast<int>(j);
          break;
        }
      }
      if (target >= 0) pivot(r, static_cast<std::size_t>(target));
    }
  }

  LPSolution make_result(LPStatus status) {
    LPSolution sol;
    sol.status = status;
    sol.iterations = iterations_;
    if (status != LPStatus::Optimal) return sol;
    sol.values.assign(nstruct_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const int b = basis_[r];
      if (b >= 0 && static_cast<std::size_t>(b) < nstruct_) {
        double v = rhs(r);
        if (v < 0.0 && v > -1e-10) v = 0.0;
        sol.values[static_cast<std::size_t>(b)] = v;
      }
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < nstruct_; ++j) obj += lp_.objective[j] * sol.values[j];
    sol.objective = obj;
    return sol;
  }

  const StandardFormLP& lp_;
  SimplexOptions opt_;
  std::size_t m_ = 0;
  std::size_t nstruct_ = 0;
  std::size_t ncols_ = 0;
  std::size_t width_ = 0;
  std::vector<double> tab_;
  std::vector<ColKind> kind_;
  std::vector<int> basis_;
  std::vector<char> is_basic_;
  std::vector<char> banned_;
  std::vector<char> flipped_;
  std::size_t iterations_ = 0;
  std::size_t iteration_cap_ = 0;
  bool crash_failed_ = false;
};

}  // namespace

LPSolution simplex_solve(const StandardFormLP& lp, const SimplexOptions& options) {
  lp.validate();
  if (!lp.basis_hint.empty()) {
    Tableau hinted(lp, options, /*use_hint=*/true);
    if (!hinted.crash_failed()) return hinted.run();
  }
  Tableau plain(lp, options, /*use_hint=*/false);
  return plain.run();
}

void dump_lp(const StandardFormLP& lp, std::ostream& os) {
  auto name = [&](std::size_t j) {
    return j < lp.var_names.size() && !lp.var_names[j].empty() ? lp.var_names[j]
                                                               : "z" + std::to_string(j + 1);
  };
  os << "min";
  bool first = true;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.objective[j] == 0.0) continue;
    os << (first ? " " : " + ") << lp.objective[j] << " " << name(j);
    first = false;
  }
  if (first) os << " 0";
  os << "\nsubject to\n";
  for (std::size_t r = 0; r < lp.num_rows(); ++r) {
    os << "  ";
    first = true;
    for (std::size_t j = 0; j < lp.num_vars(); ++j) {
      const double a = lp.constraints(r, j);
      if (a == 0.0) continue;
      os << (first ? "" : " + ") << a << " " << name(j);
      first = false;
    }
    if (first) os << "0";
    os << (lp.senses[r] == RowSense::Equal ? " = " : " <= ") << lp.rhs[r] << "\n";
  }
  os << "  all variables >= 0\n";
}

const char* to_string(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "infeasible";
}

}  // namespace svmreg
