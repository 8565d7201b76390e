#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tradeoff {

enum class ErrorCode {
  DimensionMismatch,
  NotPositiveDefinite,
  InvalidArgument,
  UnsupportedPair,
  DuplicateNodes,
  NodeCoincidence,
  OutOfCell,
  BadWeights,
  DegenerateEvaluation,
  SingularVandermonde,
  RankDeficientConstraints,
  ExcludedCase,
  NoBumpExists,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures surface as this exception; code() identifies the
// failure class so callers can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tradeoff
