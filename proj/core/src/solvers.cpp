#include "svmreg/solvers.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "svmreg/errors.hpp"
#include "svmreg/loss.hpp"
#include "svmreg/matrix.hpp"

namespace svmreg {

namespace {

double auto_step_constant(const Dataset& ds) {
  double max_norm = 0.0;
  for (std::size_t i = 0; i < ds.n(); ++i) max_norm = std::max(max_norm, l2_norm(ds.x.row(i)));
  return max_norm > 0.0 ? 1.0 / max_norm : 1.0;
}

double step_size(const SolverConfig& cfg, double c, std::size_t t) {
  return cfg.schedule == StepSchedule::Constant ? c : c / std::sqrt(static_cast<double>(t));
}

// Mean hinge subgradient over the dataset at (beta0, beta). Instances at the
// kink (margin exactly 1) contribute zero.
void mean_hinge_subgradient(const Dataset& ds, double beta0, std::span<const double> beta,
                            double& g0, std::vector<double>& g) {
  const std::size_t n = ds.n();
  const std::size_t p = ds.p();
  g0 = 0.0;
  g.assign(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = ds.x.row(i);
    const double y = static_cast<double>(ds.labels[i]);
    double f = beta0;
    for (std::size_t j = 0; j < p; ++j) f += x[j] * beta[j];
    if (y * f < 1.0) {
      g0 -= y;
      for (std::size_t j = 0; j < p; ++j) g[j] -= y * x[j];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  g0 *= inv_n;
  for (double& v : g) v *= inv_n;
}

// Shared solve loop; `step` advances the iterate, everything else (best
// tracking, averaging, trace, convergence window) is identical for both
// solvers.
template <typename StepFn>
FitResult run_solver(const Dataset& ds, const PenaltySpec& penalty, const SolverConfig& cfg,
                     StepFn step) {
  validate_binary(ds);
  const auto t_start = std::chrono::steady_clock::now();
  const std::size_t p = ds.p();

  double beta0 = 0.0;
  std::vector<double> beta(p, 0.0);
  if (cfg.has_warm_start) {
    if (cfg.warm_beta.size() != p) throw InvalidInput("solver: warm start dimension mismatch");
    beta0 = cfg.warm_beta0;
    beta = cfg.warm_beta;
  }

  double avg_beta0 = beta0;
  std::vector<double> avg_beta = beta;
  double avg_weight = 0.0;

  FitResult best;
  best.beta0 = beta0;
  best.beta = beta;
  double best_obj = objective_value(ds, penalty, beta0, beta);

  SolveReport report;
  const std::size_t stride = std::max<std::size_t>(1, cfg.max_iterations / 256);
  std::vector<double> window;  // best objective at each iteration end
  window.reserve(cfg.max_iterations + 1);
  window.push_back(best_obj);
  report.trace.emplace_back(0, best_obj);

  const double c = cfg.step_constant > 0.0 ? cfg.step_constant : auto_step_constant(ds);

  std::size_t t = 0;
  for (t = 1; t <= cfg.max_iterations; ++t) {
    const double eta = step_size(cfg, c, t);
    step(beta0, beta, eta);

    double cand0 = beta0;
    const std::vector<double>* cand = &beta;
    if (cfg.averaging) {
      // Step-weighted running average of the iterates.
      const double w = eta;
      avg_weight += w;
      const double a = w / avg_weight;
      avg_beta0 += a * (beta0 - avg_beta0);
      for (std::size_t j = 0; j < p; ++j) avg_beta[j] += a * (beta[j] - avg_beta[j]);
      cand0 = avg_beta0;
      cand = &avg_beta;
    }

    const double obj = objective_value(ds, penalty, cand0, *cand);
    if (!std::isfinite(obj))
      throw NumericalError("solver: non-finite objective at iteration " + std::to_string(t));
    if (obj < best_obj) {
      best_obj = obj;
      best.beta0 = cand0;
      best.beta = *cand;
    }
    window.push_back(best_obj);
    if (t % stride == 0) report.trace.emplace_back(t, best_obj);

    if (t >= cfg.convergence_window) {
      const double prev = window[t - cfg.convergence_window];
      const double rel = (prev - best_obj) / std::max(1e-12, std::abs(prev));
      report.achieved_tolerance = rel;
      if (rel < cfg.tolerance) {
        report.converged = true;
        break;
      }
    }
  }

  report.iterations = std::min(t, cfg.max_iterations);
  if (report.trace.back().first != report.iterations)
    report.trace.emplace_back(report.iterations, best_obj);
  report.final_objective = objective_value(ds, penalty, best.beta0, best.beta);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  best.report = std::move(report);
  return best;
}

}  // namespace

double objective_value(const Dataset& ds, const PenaltySpec& penalty, double beta0,
                       std::span<const double> beta) {
  if (beta.size() != ds.p()) throw InvalidInput("objective_value: dimension mismatch");
  double loss = 0.0;
  for (std::size_t i = 0; i < ds.n(); ++i) {
    const auto x = ds.x.row(i);
    double f = beta0;
    for (std::size_t j = 0; j < beta.size(); ++j) f += x[j] * beta[j];
    loss += hinge_loss(ds.labels[i], f);
  }
  return loss + penalty_value(penalty, beta);
}

FitResult prox_subgradient_solve(const Dataset& ds, const PenaltySpec& penalty,
                                 const SolverConfig& config) {
  if (penalty.kind == PenaltyKind::KSupport)
    throw InvalidInput("prox_subgradient_solve: k-support uses the accelerated path");
  const double inv_n = 1.0 / static_cast<double>(ds.n());
  std::vector<double> g;
  return run_solver(ds, penalty, config,
                    [&](double& beta0, std::vector<double>& beta, double eta) {
                      double g0;
                      mean_hinge_subgradient(ds, beta0, beta, g0, g);
                      for (std::size_t j = 0; j < beta.size(); ++j) beta[j] -= eta * g[j];
                      beta0 -= eta * g0;
                      // The loss direction is the per-instance mean, so the
                      // prox step carries the matching 1/n on the penalty.
                      beta = prox_map(penalty, beta, eta * inv_n);
                    });
}

FitResult accelerated_subgradient_solve(const Dataset& ds, const PenaltySpec& penalty,
                                        const SolverConfig& config) {
  if (penalty.kind != PenaltyKind::KSupport)
    throw InvalidInput("accelerated_subgradient_solve: expects a k-support penalty");
  if (penalty.k < 1 || static_cast<std::size_t>(penalty.k) > ds.p())
    throw InvalidInput("accelerated_subgradient_solve: k out of range");

  const double inv_n = 1.0 / static_cast<double>(ds.n());
  double prev_beta0 = config.has_warm_start ? config.warm_beta0 : 0.0;
  std::vector<double> prev_beta =
      config.has_warm_start ? config.warm_beta : std::vector<double>(ds.p(), 0.0);
  std::size_t t = 0;
  std::vector<double> g, y(ds.p());

  return run_solver(ds, penalty, config,
                    [&](double& beta0, std::vector<double>& beta, double eta) {
                      ++t;
                      const double mu =
                          static_cast<double>(t - 1) / static_cast<double>(t + 2);
                      double y0 = beta0 + mu * (beta0 - prev_beta0);
                      for (std::size_t j = 0; j < beta.size(); ++j)
                        y[j] = beta[j] + mu * (beta[j] - prev_beta[j]);

                      double g0;
                      mean_hinge_subgradient(ds, y0, y, g0, g);
                      const std::vector<double> pg = penalty_subgradient(penalty, y);

                      prev_beta0 = beta0;
                      prev_beta = beta;
                      beta0 = y0 - eta * g0;
                      for (std::size_t j = 0; j < beta.size(); ++j)
                        beta[j] = y[j] - eta * (g[j] + inv_n * pg[j]);
                    });
}

}  // namespace svmreg
