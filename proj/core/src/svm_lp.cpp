#include "svmreg/svm_lp.hpp"

#include <cmath>
#include <string>

#include "svmreg/errors.hpp"

namespace svmreg {

namespace {

double snap_zero(double v) { return std::abs(v) < 1e-10 ? 0.0 : v; }

}  // namespace

CompiledBinaryL1 binary_l1_svm_to_lp(const Dataset& ds, double lambda) {
  if (ds.n() == 0) throw InvalidInput("binary_l1_svm_to_lp: empty dataset");
  if (!(lambda >= 0.0)) throw InvalidInput("binary_l1_svm_to_lp: lambda must be >= 0");
  for (int y : ds.labels)
    if (y != 1 && y != -1) throw InvalidInput("binary_l1_svm_to_lp: labels must be +1/-1");

  const std::size_t n = ds.n();
  const std::size_t p = ds.p();
  BinaryL1Layout lay{p, n};

  StandardFormLP lp;
  lp.objective.assign(lay.num_vars(), 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    lp.objective[lay.beta_plus(j)] = lambda;
    lp.objective[lay.beta_minus(j)] = lambda;
  }
  for (std::size_t i = 0; i < n; ++i) lp.objective[lay.slack(i)] = 1.0;

  // Margin rows, written as <= with negative rhs; the solver flips them back.
  lp.constraints = DenseMatrix(n, lay.num_vars());
  lp.rhs.assign(n, -1.0);
  lp.senses.assign(n, RowSense::LessEqual);
  lp.basis_hint.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = static_cast<double>(ds.labels[i]);
    auto row = lp.constraints.row(i);
    const auto x = ds.x.row(i);
    for (std::size_t j = 0; j < p; ++j) {
      row[lay.beta_plus(j)] = -y * x[j];
      row[lay.beta_minus(j)] = y * x[j];
    }
    row[lay.intercept_plus()] = -y;
    row[lay.intercept_minus()] = y;
    row[lay.slack(i)] = -1.0;
    // beta = 0, xi_i = 1 is feasible; start the simplex there.
    lp.basis_hint[i] = static_cast<int>(lay.slack(i));
  }
  return {std::move(lp), lay};
}

ExtractedBinary extract_binary_model(const LPSolution& sol, const BinaryL1Layout& layout) {
  if (sol.status != LPStatus::Optimal)
    throw InvalidInput("extract_binary_model: solution is not optimal");
  ExtractedBinary out;
  out.beta.resize(layout.p);
  out.slacks.resize(layout.n);
  for (std::size_t j = 0; j < layout.p; ++j)
    out.beta[j] = snap_zero(sol.values[layout.beta_plus(j)] - sol.values[layout.beta_minus(j)]);
  out.beta0 = snap_zero(sol.values[layout.intercept_plus()] - sol.values[layout.intercept_minus()]);
  for (std::size_t i = 0; i < layout.n; ++i) out.slacks[i] = sol.values[layout.slack(i)];
  return out;
}

CompiledL1Msvm l1msvm_to_lp(const Dataset& ds, double lambda, int num_classes) {
  if (!(lambda >= 0.0)) throw InvalidInput("l1msvm_to_lp: lambda must be >= 0");
  validate_multiclass(ds, num_classes);

  const std::size_t n = ds.n();
  const std::size_t p = ds.p();
  const std::size_t k = static_cast<std::size_t>(num_classes);
  L1MsvmLayout lay{k, p, n};

  StandardFormLP lp;
  lp.objective.assign(lay.num_vars(), 0.0);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < p; ++j) {
      lp.objective[lay.beta_plus(c, j)] = lambda;
      lp.objective[lay.beta_minus(c, j)] = lambda;
    }
  for (std::size_t i = 0; i < n; ++i) lp.objective[lay.slack(i)] = 1.0;

  const std::size_t margin_rows = n * (k - 1);
  const std::size_t rows = margin_rows + 1 + p;
  lp.constraints = DenseMatrix(rows, lay.num_vars());
  lp.rhs.assign(rows, 0.0);
  lp.senses.assign(rows, RowSense::Equal);
  lp.basis_hint.assign(rows, -1);

  // Margin rows first, grouped by instance. The first row of each group is
  // hinted to make xi_i basic (beta = 0, xi = 1 is feasible); the remaining
  // rows of the group then start with their surplus basic at zero, which the
  // solver's crash step validates. Row order matters for that elimination.
  std::size_t r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t yc = static_cast<std::size_t>(ds.labels[i] - 1);
    const auto x = ds.x.row(i);
    bool first_row_of_instance = true;
    for (std::size_t c = 0; c < k; ++c) {
      if (c == yc) continue;
      auto row = lp.constraints.row(r);
      for (std::size_t j = 0; j < p; ++j) {
        const double v = x[j];
        row[lay.beta_plus(yc, j)] = -v;
        row[lay.beta_minus(yc, j)] = v;
        row[lay.beta_plus(c, j)] = v;
        row[lay.beta_minus(c, j)] = -v;
      }
      row[lay.intercept_plus(yc)] = -1.0;
      row[lay.intercept_minus(yc)] = 1.0;
      row[lay.intercept_plus(c)] = 1.0;
      row[lay.intercept_minus(c)] = -1.0;
      row[lay.slack(i)] = -1.0;
      lp.rhs[r] = -1.0;
      lp.senses[r] = RowSense::LessEqual;
      if (first_row_of_instance) {
        lp.basis_hint[r] = static_cast<int>(lay.slack(i));
        first_row_of_instance = false;
      }
      ++r;
    }
  }

  // Sum-to-zero rows: intercepts, then one row per coordinate.
  {
    auto row = lp.constraints.row(r);
    for (std::size_t c = 0; c < k; ++c) {
      row[lay.intercept_plus(c)] = 1.0;
      row[lay.intercept_minus(c)] = -1.0;
    }
    ++r;
  }
  for (std::size_t j = 0; j < p; ++j) {
    auto row = lp.constraints.row(r);
    for (std::size_t c = 0; c < k; ++c) {
      row[lay.beta_plus(c, j)] = 1.0;
      row[lay.beta_minus(c, j)] = -1.0;
    }
    ++r;
  }
  return {std::move(lp), lay};
}

ExtractedMultiClass extract_multiclass_model(const LPSolution& sol, const L1MsvmLayout& layout) {
  if (sol.status != LPStatus::Optimal)
    throw InvalidInput("extract_multiclass_model: solution is not optimal");
  ExtractedMultiClass out;
  out.k = layout.k;
  out.intercepts.resize(layout.k);
  out.coefficients = DenseMatrix(layout.k, layout.p);
  for (std::size_t c = 0; c < layout.k; ++c) {
    out.intercepts[c] =
        snap_zero(sol.values[layout.intercept_plus(c)] - sol.values[layout.intercept_minus(c)]);
    for (std::size_t j = 0; j < layout.p; ++j)
      out.coefficients(c, j) = snap_zero(sol.values[layout.beta_plus(c, j)] -
                                         sol.values[layout.beta_minus(c, j)]);
  }

  double sum0 = 0.0;
  for (std::size_t c = 0; c < layout.k; ++c) sum0 += out.intercepts[c];
  if (std::abs(sum0) > 1e-8)
    throw NumericalError("extract_multiclass_model: intercept sum-to-zero violated: " +
                         std::to_string(sum0));
  for (std::size_t j = 0; j < layout.p; ++j) {
    double s = 0.0;
    for (std::size_t c = 0; c < layout.k; ++c) s += out.coefficients(c, j);
    if (std::abs(s) > 1e-8)
      throw NumericalError("extract_multiclass_model: coefficient sum-to-zero violated at column " +
                           std::to_string(j));
  }
  return out;
}

}  // namespace svmreg
