#pragma once

#include <stdexcept>
#include <string>

namespace fflab {

enum class ErrorCode {
  NonOddPrime = 1,
  InvalidDegree,
  Parse,
  NotSquareFree,
  DegreeZero,
  EvenDegree,
  PoleAtEvaluation,
  ZeroPolynomial,
  NotIrreducible,
  SquareModulus,
  DomainError,
  InsufficientDecay,
  MassDefect,
  SupportExceeded,
  NonTerminating,
  Io,
  InvalidArgument,
  Unsupported,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

}  // namespace fflab
