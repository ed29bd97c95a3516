#ifndef SVMREG_EXPERIMENTS_HPP
#define SVMREG_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svmreg/dataio.hpp"
#include "svmreg/datagen.hpp"
#include "svmreg/metrics.hpp"

namespace svmreg {

// Benchmark pipelines. Both re-randomize by repetition index through derived
// seeds, so runs are reproducible and repetitions are independent.

struct MethodResult {
  ModelFamily family = ModelFamily::L2;
  EvalReport aggregate;
  std::vector<EvalReport> per_rep;
  std::vector<PenaltySpec> chosen;    // CV winner per repetition
  std::vector<std::string> failures;  // recorded per failed cell; run continues
};

// Binary protocol: per repetition, a fresh stratified holdout split, k-fold
// CV on the training part per method, refit at the winner, evaluate on the
// held-out part.
struct BinaryBenchmarkConfig {
  Dataset data;  // optionally already contaminated
  std::vector<ModelFamily> methods = {ModelFamily::L2, ModelFamily::L1,
                                      ModelFamily::ElasticNet, ModelFamily::KSupport};
  std::optional<GridSpec> grid;  // defaults per family when unset
  std::size_t repetitions = 10;
  std::uint64_t seed = 1;
  double holdout_fraction = 1.0 / 3.0;
  std::size_t cv_folds = 10;
  TrainOptions train;
  int jobs = 1;
};

std::vector<MethodResult> run_binary_benchmark(const BinaryBenchmarkConfig& config);

// Four-class protocol: per repetition, fresh train and test sets from the
// generator (test seed derived from the train seed), leave-one-out CV on the
// training set, refit, evaluate.
struct FourClassBenchmarkConfig {
  FourClassSpec base;  // seed field is re-derived per repetition
  std::vector<ModelFamily> methods = {ModelFamily::OvaL2, ModelFamily::OvaL1,
                                      ModelFamily::OvaElasticNet, ModelFamily::OvaKSupport,
                                      ModelFamily::L1Msvm};
  std::optional<GridSpec> grid;
  std::size_t repetitions = 50;
  std::uint64_t seed = 1;
  TrainOptions train;
  int jobs = 1;
};

std::vector<MethodResult> run_fourclass_benchmark(const FourClassBenchmarkConfig& config);

}  // namespace svmreg

#endif
