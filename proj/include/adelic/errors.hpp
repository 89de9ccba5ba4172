#pragma once

#include <stdexcept>
#include <string>

namespace adelic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroInput : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// An irreducible factor of degree > 1 appeared where the algorithm needs a
/// full split over the current base field.
class NeedsLargerField : public Error {
 public:
  NeedsLargerField(const std::string& what, std::string factor)
      : Error(what + ": factor " + factor + " does not split"), factor_(std::move(factor)) {}
  const std::string& factor() const { return factor_; }

 private:
  std::string factor_;
};

class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class WildOrInseparableResidue : public Error {
 public:
  using Error::Error;
};

class UnsupportedWildRamification : public Error {
 public:
  using Error::Error;
};

class RoutingAmbiguous : public Error {
 public:
  using Error::Error;
};

class CutoffTooNarrow : public Error {
 public:
  using Error::Error;
};

class WitnessNotFound : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class NotAUnit : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree by theory disagreed. Always a bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace adelic
