#pragma once

#include <stdexcept>
#include <string>

namespace qcos {

/// Coarse failure classes; the CLI maps each one to an exit code.
enum class ErrorCategory { usage = 1, data = 2, numerical = 3, internal = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorCategory::usage, what) {}
};

/// Malformed input data: zero vectors, inconsistent dimensions, bad CSV rows.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

class DimensionMismatch : public DataError {
 public:
  using DataError::DataError;
};

/// Gate or circuit that references invalid qubits.
class InvalidCircuit : public Error {
 public:
  explicit InvalidCircuit(const std::string& what) : Error(ErrorCategory::usage, what) {}
};

class UnsupportedGate : public Error {
 public:
  explicit UnsupportedGate(const std::string& what) : Error(ErrorCategory::usage, what) {}
};

class UnsupportedInstance : public Error {
 public:
  explicit UnsupportedInstance(const std::string& what) : Error(ErrorCategory::usage, what) {}
};

/// Degenerate numerical situations, e.g. conditioning on a zero-probability outcome.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

class InsufficientShots : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateSimilarity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Broken internal invariant (norm drift after a gate, etc.).
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ErrorCategory::internal, what) {}
};

}  // namespace qcos
