#pragma once

#include <stdexcept>
#include <string>

namespace fanforge {

enum class ErrorCode {
  SpanViolation,
  NotSublattice,
  ZeroVector,
  NotInLattice,
  NotStrictlyConvex,
  NotSimplicial,
  EmptyInterior,
  UnknownId,
  NotPrimitive,
  NotInterior,
  StarsNotDisjoint,
  NotFaceClosed,
  NotInCone,
  NoSmallVectors,
  UniquenessViolated,
  InvariantViolated,
  NonTermination,
  OrderNotTotal,
  NotBalanced,
  NotSimplicialPair,
  InOmega,
  NotRelativelyIrreducible,
  MapKindUnsupported,
  MapInvalid,
  FunctorialityMismatch,
  EmptySupport,
  ParseError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fanforge
