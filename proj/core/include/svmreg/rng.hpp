#ifndef SVMREG_RNG_HPP
#define SVMREG_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace svmreg {

// All randomness in the toolkit flows through this header so that streams are
// bit-identical across platforms. The engine is pinned to std::mt19937_64
// (its output sequence is fixed by the standard) and the transforms below are
// written out explicitly instead of using std::*_distribution, whose results
// are implementation-defined.

// splitmix64 finalizer; used to derive independent per-task seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return mix_seed(base + (stream + 1) * 0x9E3779B97F4A7C15ull);
}

// Scalar N(0,1) generator: 53-bit uniforms from mt19937_64 fed through
// Box-Muller. Values are produced in pairs; the sine branch is cached and
// returned by the next call, so the draw order is part of the contract.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0,1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double next() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform();  // (0,1], keeps log() finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// Unbiased integer in [0, n) by rejection; std::uniform_int_distribution is
// not portable across standard libraries.
inline std::uint64_t uniform_index(std::mt19937_64& engine, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine();
  } while (x >= limit);
  return x % n;
}

// Deterministic Fisher-Yates shuffle of indices 0..n-1.
template <typename T>
void shuffle_in_place(std::vector<T>& v, std::mt19937_64& engine) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_index(engine, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace svmreg

#endif
