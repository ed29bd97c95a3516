#ifndef SVMREG_SVM_LP_HPP
#define SVMREG_SVM_LP_HPP

#include <cstddef>
#include <vector>

#include "svmreg/dataset.hpp"
#include "svmreg/lp.hpp"

namespace svmreg {

// Compilers that reduce L1-penalized hinge SVMs to standard-form LPs and read
// coefficients back out. Coefficients and free intercepts are split into
// nonnegative pairs (b = b+ - b-), one slack xi_i per instance carries the
// hinge violation.

// Variable layout of the binary problem:
//   [ beta+ (p) | beta- (p) | b0+ | b0- | xi (n) ]
struct BinaryL1Layout {
  std::size_t p = 0;
  std::size_t n = 0;
  std::size_t beta_plus(std::size_t j) const { return j; }
  std::size_t beta_minus(std::size_t j) const { return p + j; }
  std::size_t intercept_plus() const { return 2 * p; }
  std::size_t intercept_minus() const { return 2 * p + 1; }
  std::size_t slack(std::size_t i) const { return 2 * p + 2 + i; }
  std::size_t num_vars() const { return 2 * p + 2 + n; }
};

struct CompiledBinaryL1 {
  StandardFormLP lp;
  BinaryL1Layout layout;
};

// min sum_i xi_i + lambda sum_j (beta+_j + beta-_j)
// s.t. y_i (b0 + x_i^T beta) >= 1 - xi_i, all split variables >= 0.
CompiledBinaryL1 binary_l1_svm_to_lp(const Dataset& ds, double lambda);

struct ExtractedBinary {
  double beta0 = 0.0;
  std::vector<double> beta;
  std::vector<double> slacks;
};

ExtractedBinary extract_binary_model(const LPSolution& sol, const BinaryL1Layout& layout);

// Variable layout of the k-class problem:
//   [ beta+ (k*p) | beta- (k*p) | b0+ (k) | b0- (k) | xi (n) ]
// with beta entries ordered class-major (c*p + j).
struct L1MsvmLayout {
  std::size_t k = 0;
  std::size_t p = 0;
  std::size_t n = 0;
  std::size_t beta_plus(std::size_t c, std::size_t j) const { return c * p + j; }
  std::size_t beta_minus(std::size_t c, std::size_t j) const { return k * p + c * p + j; }
  std::size_t intercept_plus(std::size_t c) const { return 2 * k * p + c; }
  std::size_t intercept_minus(std::size_t c) const { return 2 * k * p + k + c; }
  std::size_t slack(std::size_t i) const { return 2 * k * p + 2 * k + i; }
  std::size_t num_vars() const { return 2 * k * p + 2 * k + n; }
};

struct CompiledL1Msvm {
  StandardFormLP lp;
  L1MsvmLayout layout;
};

// min sum_i xi_i + lambda sum_{c,j} (beta+_{c,j} + beta-_{c,j})
// s.t. f_{y_i}(x_i) - f_c(x_i) >= 1 - xi_i  for every i and c != y_i,
//      sum_c b0_c = 0, sum_c beta_{c,j} = 0 for every j.
// The per-(i,c) margin rows jointly enforce the max over c != y_i.
CompiledL1Msvm l1msvm_to_lp(const Dataset& ds, double lambda, int num_classes);

struct ExtractedMultiClass {
  std::size_t k = 0;
  std::vector<double> intercepts;  // k
  DenseMatrix coefficients;        // k x p
};

// Reads beta_{c,j} = beta+ - beta- (values below 1e-10 snapped to exact 0)
// and checks the sum-to-zero rows within 1e-8.
ExtractedMultiClass extract_multiclass_model(const LPSolution& sol, const L1MsvmLayout& layout);

}  // namespace svmreg

#endif
