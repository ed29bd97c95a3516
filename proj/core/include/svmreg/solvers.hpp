#ifndef SVMREG_SOLVERS_HPP
#define SVMREG_SOLVERS_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "svmreg/dataset.hpp"
#include "svmreg/penalty.hpp"

namespace svmreg {

enum class StepSchedule { Constant, InverseSqrt };

struct SolverConfig {
  std::size_t max_iterations = 2000;
  // Convergence: relative change of the best objective over a window of
  // `convergence_window` iterations below `tolerance`.
  double tolerance = 1e-5;
  std::size_t convergence_window = 10;
  StepSchedule schedule = StepSchedule::InverseSqrt;
  double step_constant = 0.0;  // 0 = auto: 1 / max row l2 norm of X
  bool averaging = true;
  std::uint64_t seed = 0;  // reserved for randomized initialization

  // Warm start (used by regularization-path tracing).
  bool has_warm_start = false;
  double warm_beta0 = 0.0;
  std::vector<double> warm_beta;
};

struct SolveReport {
  std::size_t iterations = 0;
  double final_objective = 0.0;
  std::vector<std::pair<std::size_t, double>> trace;  // downsampled (iter, best objective)
  bool converged = false;
  double achieved_tolerance = 0.0;  // last windowed relative change
  double wall_seconds = 0.0;        // never serialized; outputs stay reproducible
};

struct FitResult {
  double beta0 = 0.0;
  std::vector<double> beta;
  SolveReport report;
};

// Penalized empirical objective: sum_i hinge(y_i, beta0 + x_i beta) + penalty(beta).
double objective_value(const Dataset& ds, const PenaltySpec& penalty, double beta0,
                       std::span<const double> beta);

// Proximal subgradient descent for L2 / L1 / elastic net:
//   beta <- prox(beta - eta_t * mean hinge subgradient).
// Returns the best-objective iterate seen, not the last one.
FitResult prox_subgradient_solve(const Dataset& ds, const PenaltySpec& penalty,
                                 const SolverConfig& config = {});

// Momentum (Nesterov-style) subgradient descent for the k-support penalty;
// also best-iterate.
FitResult accelerated_subgradient_solve(const Dataset& ds, const PenaltySpec& penalty,
                                        const SolverConfig& config = {});

}  // namespace svmreg

#endif
