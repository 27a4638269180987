#pragma once

#include <stdexcept>
#include <string>

namespace pdiv {

enum class ErrorKind {
  DimensionMismatch,
  NonPointedCone,
  NonIntegralDivisor,
  UnsupportedBackend,
  NotTMoveable,
  WeightOutsideCone,
  NotSubcone,
  IterationLimitExceeded,
  UnsupportedBase,
  InvalidArgument,
  Parse,
  Semantic,
};

const char* to_string(ErrorKind kind);

/// Library-wide exception; `kind()` lets the CLI map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pdiv
