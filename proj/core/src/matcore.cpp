#include "svmreg/matcore.hpp"

#include <cmath>
#include <string>

#include "svmreg/errors.hpp"
#include "svmreg/rng.hpp"

namespace svmreg {

DenseMatrix cholesky(const DenseMatrix& sigma) {
  const std::size_t n = sigma.rows();
  if (n == 0 || sigma.cols() != n) throw InvalidInput("cholesky: matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(sigma(i, j) - sigma(j, i)) > 1e-12)
        throw InvalidInput("cholesky: matrix not symmetric within 1e-12");

  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = sigma(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (pivot <= kCholeskyPivotTol)
      throw NotPositiveDefinite(
          j, "cholesky: non-positive pivot at index " + std::to_string(j) +
                 " (value " + std::to_string(pivot) + "); matrix is not positive-definite");
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = sigma(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

DenseMatrix sample_mvn(std::span<const double> mu, const DenseMatrix& chol_factor,
                       std::size_t n, std::uint64_t seed) {
  const std::size_t p = chol_factor.rows();
  if (chol_factor.cols() != p) throw InvalidInput("sample_mvn: factor must be square");
  if (mu.size() != p) throw InvalidInput("sample_mvn: dim(mu) != dim(L)");

  GaussianSampler gauss(seed);
  DenseMatrix out(n, p);
  std::vector<double> u(p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) u[j] = gauss.next();
    auto row = out.row(i);
    for (std::size_t j = 0; j < p; ++j) {
      double s = mu[j];
      for (std::size_t k = 0; k <= j; ++k) s += chol_factor(j, k) * u[k];  // L lower-triangular
      row[j] = s;
    }
  }
  return out;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidInput("pearson_correlation: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw InvalidInput("pearson_correlation: need at least 2 observations");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw InvalidInput("pearson_correlation: undefined for zero-variance input");
  double r = sxy / std::sqrt(sxx * syy);
  if (r > 1.0) r = 1.0;
  if (r < -1.0) r = -1.0;
  return r;
}

std::vector<double> Standardizer::apply(std::span<const double> row) const {
  std::vector<double> out(row.begin(), row.end());
  if (mode == StandardizeMode::None) return out;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = (out[j] - means[j]) / scales[j];
  return out;
}

void Standardizer::apply_in_place(DenseMatrix& x) const {
  if (mode == StandardizeMode::None) return;
  if (x.cols() != means.size()) throw InvalidInput("standardizer: column count mismatch");
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto row = x.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = (row[j] - means[j]) / scales[j];
  }
}

StandardizeResult standardize(const DenseMatrix& x, StandardizeMode mode) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  Standardizer t;
  t.mode = mode;
  t.means.assign(p, 0.0);
  t.scales.assign(p, 1.0);
  if (mode == StandardizeMode::None || n == 0) return {x, t};

  t.means = column_means(x);
  for (std::size_t j = 0; j < p; ++j) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = x(i, j) - t.means[j];
      ss += d * d;
    }
    double scale;
    if (mode == StandardizeMode::UnitL2) {
      scale = std::sqrt(ss);
    } else {
      scale = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    }
    // Degenerate (constant) column: pass through centered, scale recorded 1.
    if (scale <= 1e-12 * std::max(1.0, std::abs(t.means[j]))) scale = 1.0;
    t.scales[j] = scale;
  }

  DenseMatrix out = x;
  t.apply_in_place(out);
  return {std::move(out), std::move(t)};
}

std::vector<double> column_means(const DenseMatrix& x) {
  std::vector<double> m(x.cols(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto row = x.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) m[j] += row[j];
  }
  for (double& v : m) v /= static_cast<double>(x.rows());
  return m;
}

DenseMatrix sample_covariance(const DenseMatrix& x) {
  const std::size_t n = x.rows();
  const std::size_t p = x.cols();
  if (n < 2) throw InvalidInput("sample_covariance: need at least 2 rows");
  const std::vector<double> m = column_means(x);
  DenseMatrix c(p, p);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = x.row(i);
    for (std::size_t a = 0; a < p; ++a) {
      const double da = row[a] - m[a];
      for (std::size_t b = a; b < p; ++b) c(a, b) += da * (row[b] - m[b]);
    }
  }
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = a; b < p; ++b) {
      c(a, b) /= static_cast<double>(n - 1);
      c(b, a) = c(a, b);
    }
  return c;
}

const char* to_string(StandardizeMode mode) {
  switch (mode) {
    case StandardizeMode::None: return "none";
    case StandardizeMode::UnitVariance: return "zscore";
    case StandardizeMode::UnitL2: return "unitl2";
  }
  return "none";
}

StandardizeMode standardize_mode_from_string(const std::string& name) {
  if (name == "none") return StandardizeMode::None;
  if (name == "zscore") return StandardizeMode::UnitVariance;
  if (name == "unitl2") return StandardizeMode::UnitL2;
  throw InvalidInput("unknown standardize mode: " + name);
}

}  // namespace svmreg
