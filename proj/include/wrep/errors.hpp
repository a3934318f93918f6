#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wrep/complex_core.hpp"

namespace wrep {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the byte position of the failure,
/// `expected` lists the token classes that would have been accepted there.
struct ParseError : Error {
  ParseError(std::string msg, std::size_t offset_,
             std::vector<std::string> expected_)
      : Error(std::move(msg)), offset(offset_), expected(std::move(expected_)) {}
  std::size_t offset;
  std::vector<std::string> expected;
};

/// An identifier that is neither `z`, `i`, nor a known function name.
struct UnknownIdentifierError : Error {
  UnknownIdentifierError(std::string msg, std::size_t offset_, std::string name_)
      : Error(std::move(msg)), offset(offset_), name(std::move(name_)) {}
  std::size_t offset;
  std::string name;
};

/// Evaluation hit a singularity (division by zero, log(0), overflow to
/// non-finite). Carries the point and the printed offending subexpression.
struct EvalError : Error {
  EvalError(std::string msg, Complex at_, std::string subexpr_)
      : Error(std::move(msg)), at(at_), subexpr(std::move(subexpr_)) {}
  Complex at;
  std::string subexpr;
};

/// Adaptive quadrature could not reach the requested tolerance.
struct QuadratureError : Error {
  QuadratureError(std::string msg, double error_estimate_)
      : Error(std::move(msg)), error_estimate(error_estimate_) {}
  double error_estimate;
};

/// An integration path runs through (or too close to) a singularity.
struct PathError : Error {
  PathError(std::string msg, Complex at_) : Error(std::move(msg)), at(at_) {}
  Complex at;
};

/// The immersion degenerates: E*G - F^2 is below the branch-point threshold.
struct DegenerateError : Error {
  DegenerateError(std::string msg, double egf2_)
      : Error(std::move(msg)), egf2(egf2_) {}
  double egf2;
};

/// Grid/mesh construction failed (all samples skipped, no complete quads).
struct MeshError : Error {
  using Error::Error;
};

/// Parameter-domain validation failed (bad bounds, radius, or resolution).
struct DomainError : Error {
  using Error::Error;
};

}  // namespace wrep
