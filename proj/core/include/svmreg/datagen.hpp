#ifndef SVMREG_DATAGEN_HPP
#define SVMREG_DATAGEN_HPP

#include <cstdint>

#include "svmreg/dataset.hpp"

namespace svmreg {

// Binary classification with a correlated block: class means +-(m,...,m,0,...,0)
// on the first `block` coordinates, covariance block-diagonal with a constant-
// correlation block and an identity remainder. Rows 0..per_class-1 are the +1
// class, the rest -1.
struct GroupedBinarySpec {
  std::size_t per_class = 30;
  std::size_t dim = 30;
  std::size_t block = 5;
  double rho = 0.8;
  double mean = 1.0;
  std::uint64_t seed = 0;
};

Dataset gen_grouped_binary(const GroupedBinarySpec& spec);

// Four-class problem: i.i.d. N(0,1) features, then a per-class shift of
// (+d,0),(0,+d),(-d,0),(0,-d) on the first two coordinates. Classes fill
// fixed row blocks and the rows are then shuffled by the seed; only the
// first two features carry class information.
struct FourClassSpec {
  std::size_t instances = 100;  // divisible by 4
  std::size_t dim = 100;
  double shift = 3.0;
  std::uint64_t seed = 0;
};

Dataset gen_fourclass(const FourClassSpec& spec);

// Derives the companion test-set seed for a training seed.
inline constexpr std::uint64_t kTestSeedXor = 0x7465737473657421ull;
inline std::uint64_t test_seed(std::uint64_t train_seed) { return train_seed ^ kTestSeedXor; }

// Appends `num_noise` i.i.d. N(0,1) columns and records the relevant split.
Dataset contaminate(const Dataset& ds, std::size_t num_noise, std::uint64_t seed);

}  // namespace svmreg

#endif
