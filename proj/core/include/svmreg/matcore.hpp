#ifndef SVMREG_MATCORE_HPP
#define SVMREG_MATCORE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "svmreg/matrix.hpp"

namespace svmreg {

// Cholesky factorization sigma = L * L^T of a symmetric positive-definite
// matrix. Pivots at or below kCholeskyPivotTol are reported as non-PD with
// the failing index.
inline constexpr double kCholeskyPivotTol = 1e-12;
DenseMatrix cholesky(const DenseMatrix& sigma);

// n rows of N(mu, L L^T): each row is mu + L u with u filled by successive
// calls to the scalar Gaussian generator seeded with `seed`.
DenseMatrix sample_mvn(std::span<const double> mu, const DenseMatrix& chol_factor,
                       std::size_t n, std::uint64_t seed);

// Sample Pearson correlation; throws on length < 2 or zero variance.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

enum class StandardizeMode {
  None,          // identity transform
  UnitVariance,  // center, divide by sample std (n-1 denominator)
  UnitL2,        // center, divide by column l2 norm (the scaling under which
                 // the elastic-net grouping bound is stated)
};

// Fitted per-column affine transform x' = (x - mean) / scale. Columns whose
// centered norm is numerically zero keep scale 1.
struct Standardizer {
  StandardizeMode mode = StandardizeMode::None;
  std::vector<double> means;
  std::vector<double> scales;

  std::vector<double> apply(std::span<const double> row) const;
  void apply_in_place(DenseMatrix& x) const;
};

struct StandardizeResult {
  DenseMatrix x;
  Standardizer transform;
};

StandardizeResult standardize(const DenseMatrix& x, StandardizeMode mode);

std::vector<double> column_means(const DenseMatrix& x);

// Sample covariance matrix (n-1 denominator).
DenseMatrix sample_covariance(const DenseMatrix& x);

const char* to_string(StandardizeMode mode);
StandardizeMode standardize_mode_from_string(const std::string& name);

}  // namespace svmreg

#endif
