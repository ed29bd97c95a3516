#include "svmreg/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "svmreg/errors.hpp"
#include "svmreg/matcore.hpp"
#include "svmreg/rng.hpp"

namespace svmreg {

Dataset gen_grouped_binary(const GroupedBinarySpec& spec) {
  if (spec.block > spec.dim) throw InvalidInput("gen_grouped_binary: block size > dimension");
  if (spec.block == 0 || spec.per_class == 0)
    throw InvalidInput("gen_grouped_binary: empty block or class");
  if (!(std::abs(spec.rho) < 1.0)) throw InvalidInput("gen_grouped_binary: |rho| must be < 1");

  DenseMatrix sigma = DenseMatrix::identity(spec.dim);
  for (std::size_t i = 0; i < spec.block; ++i)
    for (std::size_t j = 0; j < spec.block; ++j)
      if (i != j) sigma(i, j) = spec.rho;
  // Throws NotPositiveDefinite when the block correlation is infeasible.
  const DenseMatrix chol = cholesky(sigma);

  std::vector<double> mu_pos(spec.dim, 0.0);
  for (std::size_t j = 0; j < spec.block; ++j) mu_pos[j] = spec.mean;
  std::vector<double> mu_neg(spec.dim, 0.0);
  for (std::size_t j = 0; j < spec.block; ++j) mu_neg[j] = -spec.mean;

  const DenseMatrix pos = sample_mvn(mu_pos, chol, spec.per_class, derive_seed(spec.seed, 0));
  const DenseMatrix neg = sample_mvn(mu_neg, chol, spec.per_class, derive_seed(spec.seed, 1));

  Dataset ds;
  ds.x = DenseMatrix(2 * spec.per_class, spec.dim);
  ds.labels.resize(2 * spec.per_class);
  for (std::size_t i = 0; i < spec.per_class; ++i) {
    std::copy(pos.row(i).begin(), pos.row(i).end(), ds.x.row(i).begin());
    ds.labels[i] = 1;
    std::copy(neg.row(i).begin(), neg.row(i).end(), ds.x.row(spec.per_class + i).begin());
    ds.labels[spec.per_class + i] = -1;
  }
  return ds;
}

Dataset gen_fourclass(const FourClassSpec& spec) {
  if (spec.instances == 0 || spec.instances % 4 != 0)
    throw InvalidInput("gen_fourclass: instance count must be a positive multiple of 4");
  if (spec.dim < 2) throw InvalidInput("gen_fourclass: need at least 2 features");
  if (!(spec.shift > 0.0)) throw InvalidInput("gen_fourclass: shift must be positive");

  const std::size_t per_class = spec.instances / 4;
  GaussianSampler gauss(derive_seed(spec.seed, 0));

  DenseMatrix x(spec.instances, spec.dim);
  for (double& v : x.data()) v = gauss.next();

  static constexpr double kShifts[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<int> labels(spec.instances);
  for (std::size_t i = 0; i < spec.instances; ++i) {
    const std::size_t c = i / per_class;  // fixed blocks pre-shuffle
    labels[i] = static_cast<int>(c) + 1;
    x(i, 0) += spec.shift * kShifts[c][0];
    x(i, 1) += spec.shift * kShifts[c][1];
  }

  std::vector<std::size_t> order(spec.instances);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 engine(derive_seed(spec.seed, 1));
  shuffle_in_place(order, engine);

  Dataset ds;
  ds.x = DenseMatrix(spec.instances, spec.dim);
  ds.labels.resize(spec.instances);
  for (std::size_t r = 0; r < spec.instances; ++r) {
    std::copy(x.row(order[r]).begin(), x.row(order[r]).end(), ds.x.row(r).begin());
    ds.labels[r] = labels[order[r]];
  }
  ds.relevant_features = 2;
  return ds;
}

Dataset contaminate(const Dataset& ds, std::size_t num_noise, std::uint64_t seed) {
  Dataset out;
  out.labels = ds.labels;
  out.relevant_features = ds.p();
  out.x = DenseMatrix(ds.n(), ds.p() + num_noise);
  GaussianSampler gauss(seed);
  for (std::size_t i = 0; i < ds.n(); ++i) {
    auto src = ds.x.row(i);
    auto dst = out.x.row(i);
    std::copy(src.begin(), src.end(), dst.begin());
    for (std::size_t j = 0; j < num_noise; ++j) dst[ds.p() + j] = gauss.next();
  }
  out.feature_names = ds.feature_names;
  if (!out.feature_names.empty())
    for (std::size_t j = 0; j < num_noise; ++j)
      out.feature_names.push_back("noise" + std::to_string(j + 1));
  return out;
}

}  // namespace svmreg
