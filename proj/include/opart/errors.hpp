#pragma once

#include <stdexcept>
#include <string>

namespace opart {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input describes an inadmissible modulus system or malformed object.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DominanceViolated : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class SumsNotDistinct : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ModulusTooSmall : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class TooManyGenerators : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class MalformedOverpartition : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ConventionOutOfRange : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class TruncationMismatch : public Error {
 public:
  using Error::Error;
};

/// A coefficient was requested beyond the exponent up to which a series is known.
class InsufficientPrecision : public Error {
 public:
  using Error::Error;
};

class NonConvergent : public Error {
 public:
  using Error::Error;
};

class NonUnitLeadingTerm : public Error {
 public:
  using Error::Error;
};

class NotStabilized : public Error {
 public:
  using Error::Error;
};

class ChainBroken : public Error {
 public:
  ChainBroken(std::string stage, const std::string& detail)
      : Error("chain broken at stage '" + stage + "': " + detail), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace opart
