#ifndef SVMREG_PENALTY_HPP
#define SVMREG_PENALTY_HPP

#include <span>
#include <string>
#include <vector>

namespace svmreg {

enum class PenaltyKind { L2, L1, ElasticNet, KSupport };

// Tagged regularizer choice. The scalar penalties are, with beta the
// coefficient vector (the intercept is never penalized):
//   L2          (lambda/2) ||beta||_2^2
//   L1          lambda ||beta||_1
//   ElasticNet  lambda1 ||beta||_1 + (lambda2/2) ||beta||_2^2
//   KSupport    lambda ||beta||_k^sp
struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::L2;
  double lambda = 0.0;   // L2 / L1 / KSupport weight
  double lambda1 = 0.0;  // elastic net l1 weight
  double lambda2 = 0.0;  // elastic net l2 weight
  int k = 0;             // KSupport only, 1 <= k <= p

  static PenaltySpec l2(double lambda);
  static PenaltySpec l1(double lambda);
  static PenaltySpec elastic_net(double lambda1, double lambda2);
  static PenaltySpec ksupport(double lambda, int k);

  // The weight a grid point varies: lambda, or lambda1 for elastic net.
  double primary_weight() const {
    return kind == PenaltyKind::ElasticNet ? lambda1 : lambda;
  }

  std::string name() const;
};

double penalty_value(const PenaltySpec& spec, std::span<const double> beta);

// k-support norm: gauge of conv{ b : ||b||_0 <= k, ||b||_2 <= 1 }. Computed
// from the sorted magnitudes a_1 >= ... >= a_d via the unique r in
// {0,...,k-1} with a_{k-r-1} > (1/(r+1)) sum_{i=k-r..d} a_i >= a_{k-r}
// (1-based, a_0 = +inf), giving
//   ( sum_{i<=k-r-1} a_i^2 + (sum_{i>=k-r} a_i)^2 / (r+1) )^(1/2).
double ksupport_norm(std::span<const double> beta, int k);

// Subgradient of the k-support norm at beta (zero vector at beta = 0):
// head coordinates get beta_i/norm, tail coordinates sign(beta_i)*T/((r+1)*norm)
// with T the tail magnitude sum.
std::vector<double> ksupport_subgradient(std::span<const double> beta, int k);

// Subgradient of penalty_value at beta (sign(0) taken as 0).
std::vector<double> penalty_subgradient(const PenaltySpec& spec, std::span<const double> beta);

// prox_{step * penalty}(v) = argmin_u 1/2||u - v||^2 + step * penalty(u).
// Closed forms exist for L2, L1 and elastic net; KSupport throws (the
// k-support path trains by subgradient, not prox).
std::vector<double> prox_map(const PenaltySpec& spec, std::span<const double> v, double step);

PenaltyKind penalty_kind_from_string(const std::string& name);
const char* to_string(PenaltyKind kind);

}  // namespace svmreg

#endif
