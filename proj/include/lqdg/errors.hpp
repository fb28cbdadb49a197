#pragma once

#include <stdexcept>
#include <string>

namespace lqdg {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed config files, games that fail validation,
/// out-of-domain arguments. The CLI maps these to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A solver could not produce a result. The CLI maps these to exit code 1.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Game or weight data violating a model invariant.
class ValidationError : public ConfigError {
 public:
  enum class Code {
    NonPositiveWeight,
    ZeroGain,
    WeightSumMismatch,
    ZeroInitialState,
    LengthMismatch,
    ZeroSelfWeight,
  };

  ValidationError(Code code, const std::string& what)
      : ConfigError(what), code_(code) {}

  Code code() const { return code_; }

 private:
  Code code_;
};

/// Config file syntax or schema problem, pinned to a field and a line.
class ParseError : public ConfigError {
 public:
  ParseError(std::string field, int line, const std::string& what)
      : ConfigError("line " + std::to_string(line) + ", field '" + field +
                    "': " + what),
        field_(std::move(field)),
        line_(line) {}

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

/// Argument outside the documented domain of an operation.
class InvalidArgument : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Requested PoI design target outside (sqrt(2)/2, sqrt(2)].
class TargetOutOfRange : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// No candidate survived the feedback-NE acceptance filters.
class NoEquilibrium : public SolverError {
 public:
  using SolverError::SolverError;
};

/// An iterative solver hit its iteration cap before meeting tolerance.
class NonConvergence : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Root bracketing failed: no sign change found for the fixed-point equation.
class NoBracket : public SolverError {
 public:
  using SolverError::SolverError;
};

/// A solution was found but violates the applicability conditions it relies on.
class ConditionViolated : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Closed-loop drift is not negative; infinite-horizon cost undefined.
class UnstableClosedLoop : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Player count exceeds the configured cap for the 2^N eigenproblem.
class DimensionCap : public SolverError {
 public:
  using SolverError::SolverError;
};

/// An analytic bound was requested for a drift sign it does not cover.
class BoundInapplicable : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace lqdg
