#pragma once

#include <stdexcept>
#include <string>

namespace teicp {

/// Malformed input: dimension mismatches, bad index sets, schema violations.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A solver could not reach a verdict.
class SolverError : public std::runtime_error {
 public:
  enum class Kind {
    OrderCapReached,
    NumericalFailure,
    DeltaUnderflow,
    LevelCapExceeded,
    NotCopositive,
  };

  SolverError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(SolverError::Kind kind) noexcept;

}  // namespace teicp
