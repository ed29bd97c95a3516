#ifndef SVMREG_ERRORS_HPP
#define SVMREG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace svmreg {

// Bad arguments, dimension mismatches, invalid specs.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input files (ragged rows, bad cells, unknown labels).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure inside a factorization or solver.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveDefinite : public NumericalError {
 public:
  NotPositiveDefinite(std::size_t pivot_index, const std::string& what)
      : NumericalError(what), pivot_index_(pivot_index) {}
  std::size_t pivot_index() const noexcept { return pivot_index_; }

 private:
  std::size_t pivot_index_;
};

class SimplexIterationLimit : public NumericalError {
 public:
  SimplexIterationLimit(std::size_t iterations, const std::string& what)
      : NumericalError(what), iterations_(iterations) {}
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::size_t iterations_;
};

}  // namespace svmreg

#endif
