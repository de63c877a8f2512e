// errors.hpp
// Exception hierarchy shared by every qwsearch module.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qwsearch {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

class InvalidConfigError : public Error {
 public:
  using Error::Error;
};

// Raised by project() when the unmarked amplitudes are not all equal.
class SymmetryViolationError : public Error {
 public:
  SymmetryViolationError(const std::string& what, double max_deviation)
      : Error(what), max_deviation_(max_deviation) {}
  double max_deviation() const noexcept { return max_deviation_; }

 private:
  double max_deviation_;
};

class UnsupportedParameterError : public Error {
 public:
  using Error::Error;
};

class SingularPointError : public Error {
 public:
  using Error::Error;
};

class HermiticityViolationError : public Error {
 public:
  using Error::Error;
};

class NumericOverflowError : public Error {
 public:
  NumericOverflowError(const std::string& what, double t, std::size_t step = 0)
      : Error(what), t_(t), step_(step) {}
  double time() const noexcept { return t_; }
  std::size_t step() const noexcept { return step_; }

 private:
  double t_;
  std::size_t step_;
};

class IntegrationDivergedError : public Error {
 public:
  using Error::Error;
};

class UnknownObservableError : public Error {
 public:
  using Error::Error;
};

class NoPeakError : public Error {
 public:
  using Error::Error;
};

// Something the theory guarantees did not happen; points at an integrator bug.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class ThresholdNotFoundError : public Error {
 public:
  using Error::Error;
};

class UnknownFigureError : public Error {
 public:
  using Error::Error;
};

}  // namespace qwsearch
