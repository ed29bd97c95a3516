#include "svmreg/train.hpp"

#include <algorithm>
#include <cmath>

#include "svmreg/errors.hpp"
#include "svmreg/parallel.hpp"
#include "svmreg/svm_lp.hpp"

namespace svmreg {

namespace {

// The SVM LP paths use the faster deterministic pivot rule; anti-cycling is
// preserved by its Bland fallback.
SimplexOptions svm_simplex_options() {
  SimplexOptions opt;
  opt.rule = PivotRule::DantzigBland;
  return opt;
}

LinearModel train_binary_standardized(const Dataset& ds, const PenaltySpec& penalty,
                                      const TrainOptions& opts) {
  LinearModel model;
  model.penalty = penalty;

  Dataset work = ds;
  StandardizeResult sr = standardize(ds.x, opts.standardize);
  model.standardizer = sr.transform;
  if (opts.standardize != StandardizeMode::None) work.x = std::move(sr.x);

  if (penalty.kind == PenaltyKind::L1 && opts.exact_lp) {
    CompiledBinaryL1 compiled = binary_l1_svm_to_lp(work, penalty.lambda);
    const LPSolution sol = simplex_solve(compiled.lp, svm_simplex_options());
    if (sol.status != LPStatus::Optimal)
      throw NumericalError(std::string("binary L1 LP came back ") + to_string(sol.status));
    ExtractedBinary ex = extract_binary_model(sol, compiled.layout);
    model.beta0 = ex.beta0;
    model.beta = std::move(ex.beta);
    model.report.iterations = sol.iterations;
    model.report.converged = true;
    model.report.final_objective = sol.objective;
    model.report.trace = {{sol.iterations, sol.objective}};
    return model;
  }

  FitResult fit = penalty.kind == PenaltyKind::KSupport
                      ? accelerated_subgradient_solve(work, penalty, opts.solver)
                      : prox_subgradient_solve(work, penalty, opts.solver);
  model.beta0 = fit.beta0;
  model.beta = std::move(fit.beta);
  model.report = std::move(fit.report);
  return model;
}

}  // namespace

LinearModel train_binary(const Dataset& ds, const PenaltySpec& penalty, const TrainOptions& opts) {
  validate_binary(ds);
  if (penalty.kind == PenaltyKind::KSupport &&
      (penalty.k < 1 || static_cast<std::size_t>(penalty.k) > ds.p()))
    throw InvalidInput("train_binary: k out of range for this dataset");
  return train_binary_standardized(ds, penalty, opts);
}

MultiClassModel train_ova(const Dataset& ds, const PenaltySpec& penalty, const TrainOptions& opts) {
  const int k = ds.num_classes();
  if (ds.is_binary()) throw InvalidInput("train_ova: expects class labels 1..k");
  validate_multiclass(ds, k);

  // One shared standardization fit, reused by every subproblem.
  StandardizeResult sr = standardize(ds.x, opts.standardize);
  Dataset work = ds;
  if (opts.standardize != StandardizeMode::None) work.x = std::move(sr.x);

  MultiClassModel model;
  model.num_classes = k;
  model.origin = MultiClassOrigin::OneVsAll;
  model.penalty = penalty;
  model.standardizer = sr.transform;
  model.intercepts.assign(static_cast<std::size_t>(k), 0.0);
  model.coefficients = DenseMatrix(static_cast<std::size_t>(k), ds.p());
  model.reports.resize(static_cast<std::size_t>(k));

  TrainOptions sub = opts;
  sub.standardize = StandardizeMode::None;  // already applied
  parallel_for(static_cast<std::size_t>(k), opts.jobs, [&](std::size_t c) {
    Dataset binary = work;
    for (std::size_t i = 0; i < binary.n(); ++i)
      binary.labels[i] = work.labels[i] == static_cast<int>(c) + 1 ? 1 : -1;
    const LinearModel sub_model = train_binary(binary, penalty, sub);
    model.intercepts[c] = sub_model.beta0;
    auto dst = model.coefficients.row(c);
    std::copy(sub_model.beta.begin(), sub_model.beta.end(), dst.begin());
    model.reports[c] = sub_model.report;
  });
  return model;
}

MultiClassModel train_l1msvm(const Dataset& ds, double lambda, const TrainOptions& opts) {
  const int k = ds.num_classes();
  if (ds.is_binary()) throw InvalidInput("train_l1msvm: expects class labels 1..k");
  validate_multiclass(ds, k);

  StandardizeResult sr = standardize(ds.x, opts.standardize);
  Dataset work = ds;
  if (opts.standardize != StandardizeMode::None) work.x = std::move(sr.x);

  CompiledL1Msvm compiled = l1msvm_to_lp(work, lambda, k);
  const LPSolution sol = simplex_solve(compiled.lp, svm_simplex_options());
  if (sol.status != LPStatus::Optimal)
    throw NumericalError(std::string("l1msvm LP came back ") + to_string(sol.status) +
                         " (the slack variables make this LP always feasible)");
  ExtractedMultiClass ex = extract_multiclass_model(sol, compiled.layout);

  MultiClassModel model;
  model.num_classes = k;
  model.origin = MultiClassOrigin::L1Msvm;
  model.penalty = PenaltySpec::l1(lambda);
  model.standardizer = sr.transform;
  model.intercepts = std::move(ex.intercepts);
  model.coefficients = std::move(ex.coefficients);
  model.reports.resize(1);
  model.reports[0].iterations = sol.iterations;
  model.reports[0].converged = true;
  model.reports[0].final_objective = sol.objective;
  model.reports[0].trace = {{sol.iterations, sol.objective}};
  return model;
}

PathResult regularization_path(const Dataset& ds, const PenaltySpec& family,
                               std::vector<double> grid, const TrainOptions& opts) {
  if (grid.empty()) throw InvalidInput("regularization_path: empty grid");
  for (double g : grid)
    if (!(g > 0.0)) throw InvalidInput("regularization_path: grid values must be positive");

  PathResult result;
  if (!std::is_sorted(grid.begin(), grid.end(), std::greater<double>())) {
    std::sort(grid.begin(), grid.end(), std::greater<double>());
    result.grid_was_unsorted = true;
  }

  TrainOptions point_opts = opts;
  for (double value : grid) {
    PenaltySpec spec = family;
    if (spec.kind == PenaltyKind::ElasticNet)
      spec.lambda1 = value;
    else
      spec.lambda = value;

    const LinearModel model = train_binary(ds, spec, point_opts);
    PathRow row;
    row.lambda = value;
    row.beta0 = model.beta0;
    row.beta = model.beta;
    row.nonzeros = count_nonzero(model.beta);
    result.rows.push_back(std::move(row));

    if (!(spec.kind == PenaltyKind::L1 && opts.exact_lp)) {
      point_opts.solver.has_warm_start = true;
      point_opts.solver.warm_beta0 = model.beta0;
      point_opts.solver.warm_beta = model.beta;
    }
  }
  return result;
}

std::size_t count_nonzero(std::span<const double> beta) {
  const double max_abs = linf_norm(beta);
  std::size_t count = 0;
  for (double v : beta)
    if (is_nonzero_coefficient(v, max_abs)) ++count;
  return count;
}

NonzeroCounts count_nonzero(std::span<const double> beta, std::optional<std::size_t> split) {
  NonzeroCounts counts;
  const double max_abs = linf_norm(beta);
  for (std::size_t j = 0; j < beta.size(); ++j) {
    if (!is_nonzero_coefficient(beta[j], max_abs)) continue;
    ++counts.total;
    if (split) {
      if (j < *split)
        ++counts.relevant;
      else
        ++counts.nonrelevant;
    }
  }
  counts.has_split = split.has_value();
  return counts;
}

NonzeroCounts count_nonzero(const LinearModel& model, std::optional<std::size_t> split) {
  return count_nonzero(model.beta, split);
}

NonzeroCounts count_nonzero(const MultiClassModel& model, std::optional<std::size_t> split) {
  const std::size_t p = model.p();
  std::vector<char> selected(p, 0);
  for (int c = 0; c < model.num_classes; ++c) {
    const auto row = model.coefficients.row(static_cast<std::size_t>(c));
    const double max_abs = linf_norm(row);
    for (std::size_t j = 0; j < p; ++j)
      if (is_nonzero_coefficient(row[j], max_abs)) selected[j] = 1;
  }
  NonzeroCounts counts;
  counts.has_split = split.has_value();
  for (std::size_t j = 0; j < p; ++j) {
    if (!selected[j]) continue;
    ++counts.total;
    if (split) {
      if (j < *split)
        ++counts.relevant;
      else
        ++counts.nonrelevant;
    }
  }
  return counts;
}

double mean_binary_nonzeros(const MultiClassModel& model) {
  double total = 0.0;
  for (int c = 0; c < model.num_classes; ++c)
    total += static_cast<double>(count_nonzero(model.coefficients.row(static_cast<std::size_t>(c))));
  return total / static_cast<double>(model.num_classes);
}

bool family_is_multiclass(ModelFamily family) {
  switch (family) {
    case ModelFamily::L2:
    case ModelFamily::L1:
    case ModelFamily::ElasticNet:
    case ModelFamily::KSupport:
      return false;
    default:
      return true;
  }
}

PenaltyKind family_penalty_kind(ModelFamily family) {
  switch (family) {
    case ModelFamily::L2:
    case ModelFamily::OvaL2:
      return PenaltyKind::L2;
    case ModelFamily::L1:
    case ModelFamily::OvaL1:
    case ModelFamily::L1Msvm:
      return PenaltyKind::L1;
    case ModelFamily::ElasticNet:
    case ModelFamily::OvaElasticNet:
      return PenaltyKind::ElasticNet;
    case ModelFamily::KSupport:
    case ModelFamily::OvaKSupport:
      return PenaltyKind::KSupport;
  }
  return PenaltyKind::L2;
}

ModelFamily family_from_string(const std::string& name) {
  if (name == "l2") return ModelFamily::L2;
  if (name == "l1") return ModelFamily::L1;
  if (name == "elasticnet") return ModelFamily::ElasticNet;
  if (name == "ksupport") return ModelFamily::KSupport;
  if (name == "ova_l2") return ModelFamily::OvaL2;
  if (name == "ova_l1") return ModelFamily::OvaL1;
  if (name == "ova_elasticnet") return ModelFamily::OvaElasticNet;
  if (name == "ova_ksupport") return ModelFamily::OvaKSupport;
  if (name == "l1msvm") return ModelFamily::L1Msvm;
  throw InvalidInput("unknown model family: " + name);
}

const char* to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::L2: return "l2";
    case ModelFamily::L1: return "l1";
    case ModelFamily::ElasticNet: return "elasticnet";
    case ModelFamily::KSupport: return "ksupport";
    case ModelFamily::OvaL2: return "ova_l2";
    case ModelFamily::OvaL1: return "ova_l1";
    case ModelFamily::OvaElasticNet: return "ova_elasticnet";
    case ModelFamily::OvaKSupport: return "ova_ksupport";
    case ModelFamily::L1Msvm: return "l1msvm";
  }
  return "l2";
}

int AnyModel::predict(std::span<const double> x) const {
  if (const auto* linear = std::get_if<LinearModel>(&model)) return predict_binary(*linear, x);
  return predict_multiclass(std::get<MultiClassModel>(model), x);
}

NonzeroCounts AnyModel::nonzeros(std::optional<std::size_t> split) const {
  if (const auto* linear = std::get_if<LinearModel>(&model)) return count_nonzero(*linear, split);
  return count_nonzero(std::get<MultiClassModel>(model), split);
}

double AnyModel::mean_binary_nonzeros() const {
  if (const auto* linear = std::get_if<LinearModel>(&model))
    return static_cast<double>(count_nonzero(linear->beta));
  return svmreg::mean_binary_nonzeros(std::get<MultiClassModel>(model));
}

AnyModel train_any(const Dataset& ds, ModelFamily family, const PenaltySpec& spec,
                   const TrainOptions& opts) {
  if (family_penalty_kind(family) != spec.kind)
    throw InvalidInput("train_any: penalty spec does not match the family");
  switch (family) {
    case ModelFamily::L2:
    case ModelFamily::L1:
    case ModelFamily::ElasticNet:
    case ModelFamily::KSupport:
      return {train_binary(ds, spec, opts)};
    case ModelFamily::L1Msvm:
      return {train_l1msvm(ds, spec.lambda, opts)};
    default:
      return {train_ova(ds, spec, opts)};
  }
}

}  // namespace svmreg
