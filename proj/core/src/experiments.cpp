#include "svmreg/experiments.hpp"

#include <algorithm>

#include "svmreg/errors.hpp"
#include "svmreg/parallel.hpp"
#include "svmreg/rng.hpp"

namespace svmreg {

namespace {

GridSpec grid_for(const std::optional<GridSpec>& override_grid, ModelFamily family,
                  std::size_t p) {
  if (override_grid) {
    GridSpec g = *override_grid;
    // Fill whichever weight lists the family needs but the caller left empty.
    const GridSpec defaults = GridSpec::defaults_for(family_penalty_kind(family), p);
    if (g.lambda.empty()) g.lambda = defaults.lambda;
    if (g.lambda1.empty()) g.lambda1 = g.lambda.empty() ? defaults.lambda1 : g.lambda;
    if (g.lambda2.empty()) g.lambda2 = defaults.lambda2;
    if (g.k.empty()) g.k = defaults.k;
    return g;
  }
  return GridSpec::defaults_for(family_penalty_kind(family), p);
}

struct RepOutcome {
  bool ok = false;
  EvalReport report;
  PenaltySpec chosen;
  std::string failure;
};

std::vector<MethodResult> collect(const std::vector<ModelFamily>& methods,
                                  const std::vector<std::vector<RepOutcome>>& outcomes) {
  std::vector<MethodResult> results;
  results.reserve(methods.size());
  for (std::size_t m = 0; m < methods.size(); ++m) {
    MethodResult r;
    r.family = methods[m];
    for (const RepOutcome& o : outcomes[m]) {
      if (o.ok) {
        r.per_rep.push_back(o.report);
        r.chosen.push_back(o.chosen);
      } else {
        r.failures.push_back(o.failure);
      }
    }
    if (!r.per_rep.empty()) r.aggregate = aggregate_repetitions(r.per_rep);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace

std::vector<MethodResult> run_binary_benchmark(const BinaryBenchmarkConfig& config) {
  validate_binary(config.data);
  if (config.repetitions == 0) throw InvalidInput("benchmark: need at least one repetition");

  const std::size_t reps = config.repetitions;
  std::vector<std::vector<RepOutcome>> outcomes(config.methods.size(),
                                                std::vector<RepOutcome>(reps));

  struct Task {
    std::size_t method;
    std::size_t rep;
  };
  std::vector<Task> tasks;
  for (std::size_t m = 0; m < config.methods.size(); ++m)
    for (std::size_t r = 0; r < reps; ++r) tasks.push_back({m, r});

  parallel_for(tasks.size(), config.jobs, [&](std::size_t t) {
    const auto [m, rep] = tasks[t];
    RepOutcome& out = outcomes[m][rep];
    try {
      const ModelFamily family = config.methods[m];
      // The 66/33 split is re-randomized per repetition.
      const SplitSpec holdout = SplitSpec::holdout(
          config.holdout_fraction, derive_seed(config.seed, rep), /*stratified=*/true);
      const FoldSplit parts = split(config.data, holdout)[0];
      const Dataset train = config.data.subset(parts.train);
      const Dataset test = config.data.subset(parts.test);

      const GridSpec grid = grid_for(config.grid, family, train.p());
      SplitSpec cv = SplitSpec::kfold(config.cv_folds, derive_seed(config.seed, 1000 + rep));
      TrainOptions opts = config.train;
      opts.jobs = 1;
      const CvResult cv_result = grid_search_cv(train, family, grid, cv, opts);
      const AnyModel model = train_any(train, family, cv_result.best, opts);
      out.report = evaluate(model, test);
      out.chosen = cv_result.best;
      out.ok = true;
    } catch (const std::exception& e) {
      out.failure = std::string(to_string(config.methods[m])) + " rep " +
                    std::to_string(rep + 1) + ": " + e.what();
    }
  });

  return collect(config.methods, outcomes);
}

std::vector<MethodResult> run_fourclass_benchmark(const FourClassBenchmarkConfig& config) {
  if (config.repetitions == 0) throw InvalidInput("benchmark: need at least one repetition");

  const std::size_t reps = config.repetitions;
  std::vector<std::vector<RepOutcome>> outcomes(config.methods.size(),
                                                std::vector<RepOutcome>(reps));

  struct Task {
    std::size_t method;
    std::size_t rep;
  };
  std::vector<Task> tasks;
  for (std::size_t m = 0; m < config.methods.size(); ++m)
    for (std::size_t r = 0; r < reps; ++r) tasks.push_back({m, r});

  parallel_for(tasks.size(), config.jobs, [&](std::size_t t) {
    const auto [m, rep] = tasks[t];
    RepOutcome& out = outcomes[m][rep];
    try {
      const ModelFamily family = config.methods[m];
      FourClassSpec train_spec = config.base;
      train_spec.seed = derive_seed(config.seed, rep);
      FourClassSpec eval_spec = train_spec;
      eval_spec.seed = test_seed(train_spec.seed);
      const Dataset train = gen_fourclass(train_spec);
      const Dataset test = gen_fourclass(eval_spec);

      const GridSpec grid = grid_for(config.grid, family, train.p());
      TrainOptions opts = config.train;
      opts.jobs = 1;
      const CvResult cv_result = grid_search_cv(train, family, grid, SplitSpec::loo(), opts);
      const AnyModel model = train_any(train, family, cv_result.best, opts);
      out.report = evaluate(model, test);
      out.chosen = cv_result.best;
      out.ok = true;
    } catch (const std::exception& e) {
      out.failure = std::string(to_string(config.methods[m])) + " rep " +
                    std::to_string(rep + 1) + ": " + e.what();
    }
  });

  return collect(config.methods, outcomes);
}

}  // namespace svmreg
