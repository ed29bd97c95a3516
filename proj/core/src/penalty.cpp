#include "svmreg/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "svmreg/errors.hpp"
#include "svmreg/matrix.hpp"

namespace svmreg {

namespace {

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw InvalidInput(std::string(what) + " must be >= 0");
}

// Finds the bracketing index r for the sorted magnitudes a (descending).
// Comparisons carry a small slack so exact ties pick the first admissible r.
struct KSupportSplit {
  int r = 0;
  double tail_sum = 0.0;  // sum of a[k-r-1 .. d-1] (0-based)
};

KSupportSplit ksupport_split(const std::vector<double>& a, int k) {
  const int d = static_cast<int>(a.size());
  const double tie_tol = 1e-12 * std::max(1.0, a[0]);

  // suffix[i] = a[i] + ... + a[d-1]
  std::vector<double> suffix(static_cast<std::size_t>(d) + 1, 0.0);
  for (int i = d - 1; i >= 0; --i)
    suffix[static_cast<std::size_t>(i)] = suffix[static_cast<std::size_t>(i) + 1] + a[static_cast<std::size_t>(i)];

  for (int r = 0; r <= k - 1; ++r) {
    const int head_idx = k - r - 1;  // 1-based position k-r-1; 0 means a_0 = +inf
    const double head =
        head_idx >= 1 ? a[static_cast<std::size_t>(head_idx - 1)] : std::numeric_limits<double>::infinity();
    const double tail_sum = suffix[static_cast<std::size_t>(head_idx)];
    const double mean = tail_sum / static_cast<double>(r + 1);
    const double lower = a[static_cast<std::size_t>(head_idx)];  // a_{k-r}, 1-based
    if (head > mean - tie_tol && mean >= lower - tie_tol) return {r, tail_sum};
  }
  // Theory guarantees some r matches for beta != 0; keep the last r as a
  // numerically safe fallback.
  return {k - 1, suffix[0]};
}

}  // namespace

PenaltySpec PenaltySpec::l2(double lambda) {
  require_nonnegative(lambda, "lambda");
  PenaltySpec s;
  s.kind = PenaltyKind::L2;
  s.lambda = lambda;
  return s;
}

PenaltySpec PenaltySpec::l1(double lambda) {
  require_nonnegative(lambda, "lambda");
  PenaltySpec s;
  s.kind = PenaltyKind::L1;
  s.lambda = lambda;
  return s;
}

PenaltySpec PenaltySpec::elastic_net(double lambda1, double lambda2) {
  require_nonnegative(lambda1, "lambda1");
  require_nonnegative(lambda2, "lambda2");
  PenaltySpec s;
  s.kind = PenaltyKind::ElasticNet;
  s.lambda1 = lambda1;
  s.lambda2 = lambda2;
  return s;
}

PenaltySpec PenaltySpec::ksupport(double lambda, int k) {
  require_nonnegative(lambda, "lambda");
  if (k < 1) throw InvalidInput("ksupport: k must be >= 1");
  PenaltySpec s;
  s.kind = PenaltyKind::KSupport;
  s.lambda = lambda;
  s.k = k;
  return s;
}

std::string PenaltySpec::name() const { return to_string(kind); }

double penalty_value(const PenaltySpec& spec, std::span<const double> beta) {
  switch (spec.kind) {
    case PenaltyKind::L2: {
      const double n2 = l2_norm(beta);
      return 0.5 * spec.lambda * n2 * n2;
    }
    case PenaltyKind::L1:
      return spec.lambda * l1_norm(beta);
    case PenaltyKind::ElasticNet: {
      const double n2 = l2_norm(beta);
      return spec.lambda1 * l1_norm(beta) + 0.5 * spec.lambda2 * n2 * n2;
    }
    case PenaltyKind::KSupport:
      return spec.lambda * ksupport_norm(beta, spec.k);
  }
  return 0.0;
}

double ksupport_norm(std::span<const double> beta, int k) {
  const int d = static_cast<int>(beta.size());
  if (k < 1 || k > d) throw InvalidInput("ksupport_norm: k must lie in [1, dim(beta)]");

  std::vector<double> a(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) a[i] = std::abs(beta[i]);
  std::sort(a.begin(), a.end(), std::greater<double>());
  if (a[0] == 0.0) return 0.0;

  const KSupportSplit split = ksupport_split(a, k);
  double head_sq = 0.0;
  for (int i = 0; i < k - split.r - 1; ++i)
    head_sq += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)];
  return std::sqrt(head_sq + split.tail_sum * split.tail_sum / static_cast<double>(split.r + 1));
}

std::vector<double> ksupport_subgradient(std::span<const double> beta, int k) {
  const int d = static_cast<int>(beta.size());
  if (k < 1 || k > d) throw InvalidInput("ksupport_subgradient: k must lie in [1, dim(beta)]");

  std::vector<double> g(beta.size(), 0.0);
  std::vector<std::size_t> order(beta.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::abs(beta[i]) > std::abs(beta[j]);
  });

  std::vector<double> a(beta.size());
  for (std::size_t i = 0; i < order.size(); ++i) a[i] = std::abs(beta[order[i]]);
  if (a[0] == 0.0) return g;

  const KSupportSplit split = ksupport_split(a, k);
  double head_sq = 0.0;
  const int head_len = k - split.r - 1;
  for (int i = 0; i < head_len; ++i)
    head_sq += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(i)];
  const double norm =
      std::sqrt(head_sq + split.tail_sum * split.tail_sum / static_cast<double>(split.r + 1));

  const double tail_coef = split.tail_sum / (static_cast<double>(split.r + 1) * norm);
  for (int pos = 0; pos < d; ++pos) {
    const std::size_t j = order[static_cast<std::size_t>(pos)];
    if (pos < head_len) {
      g[j] = beta[j] / norm;
    } else if (beta[j] > 0.0) {
      g[j] = tail_coef;
    } else if (beta[j] < 0.0) {
      g[j] = -tail_coef;
    }
  }
  return g;
}

std::vector<double> penalty_subgradient(const PenaltySpec& spec, std::span<const double> beta) {
  std::vector<double> g(beta.size(), 0.0);
  switch (spec.kind) {
    case PenaltyKind::L2:
      for (std::size_t j = 0; j < beta.size(); ++j) g[j] = spec.lambda * beta[j];
      break;
    case PenaltyKind::L1:
      for (std::size_t j = 0; j < beta.size(); ++j)
        g[j] = beta[j] > 0.0 ? spec.lambda : (beta[j] < 0.0 ? -spec.lambda : 0.0);
      break;
    case PenaltyKind::ElasticNet:
      for (std::size_t j = 0; j < beta.size(); ++j) {
        const double sgn = beta[j] > 0.0 ? 1.0 : (beta[j] < 0.0 ? -1.0 : 0.0);
        g[j] = spec.lambda1 * sgn + spec.lambda2 * beta[j];
      }
      break;
    case PenaltyKind::KSupport: {
      g = ksupport_subgradient(beta, spec.k);
      for (double& v : g) v *= spec.lambda;
      break;
    }
  }
  return g;
}

std::vector<double> prox_map(const PenaltySpec& spec, std::span<const double> v, double step) {
  if (!(step > 0.0)) throw InvalidInput("prox_map: step must be positive");
  std::vector<double> u(v.begin(), v.end());
  switch (spec.kind) {
    case PenaltyKind::L2: {
      const double shrink = 1.0 / (1.0 + step * spec.lambda);
      for (double& x : u) x *= shrink;
      break;
    }
    case PenaltyKind::L1: {
      const double t = step * spec.lambda;
      for (double& x : u) x = x > t ? x - t : (x < -t ? x + t : 0.0);
      break;
    }
    case PenaltyKind::ElasticNet: {
      const double t = step * spec.lambda1;
      const double shrink = 1.0 / (1.0 + step * spec.lambda2);
      for (double& x : u) {
        x = x > t ? x - t : (x < -t ? x + t : 0.0);
        x *= shrink;
      }
      break;
    }
    case PenaltyKind::KSupport:
      throw InvalidInput("prox_map: no closed-form prox for the k-support norm; "
                         "use the subgradient path");
  }
  return u;
}

PenaltyKind penalty_kind_from_string(const std::string& name) {
  if (name == "l2") return PenaltyKind::L2;
  if (name == "l1") return PenaltyKind::L1;
  if (name == "elasticnet") return PenaltyKind::ElasticNet;
  if (name == "ksupport") return PenaltyKind::KSupport;
  throw InvalidInput("unknown penalty: " + name);
}

const char* to_string(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::L2: return "l2";
    case PenaltyKind::L1: return "l1";
    case PenaltyKind::ElasticNet: return "elasticnet";
    case PenaltyKind::KSupport: return "ksupport";
  }
  return "l2";
}

}  // namespace svmreg
