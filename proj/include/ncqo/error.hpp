#pragma once

#include <stdexcept>
#include <string>

namespace ncqo {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition (e.g. non-hermitian input).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class SingularMetricError : public Error {
 public:
  using Error::Error;
};

/// A first-order closed form left its domain (e.g. a normalization went
/// non-positive).
class BreakdownError : public Error {
 public:
  using Error::Error;
};

class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

class CutoffError : public Error {
 public:
  CutoffError(const std::string& what, int suggested)
      : Error(what), suggested_cutoff_(suggested) {}
  int suggested_cutoff() const { return suggested_cutoff_; }

 private:
  int suggested_cutoff_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ncqo
