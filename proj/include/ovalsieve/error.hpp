#pragma once

#include <stdexcept>
#include <string>

namespace ovalsieve {

// Error classes used across the library. The CLI maps these to exit codes:
// ResourceCap -> 3, InternalInvariant -> 4, everything else -> 2.
enum class Errc {
  SyntaxError,
  IntegerOverflow,
  OddOvalCount,
  MissingComponentSign,
  EvenDegree,
  OddDegree,
  NotMCurve,
  DimensionMismatch,
  DimensionCap,
  NotIsotropic,
  InconsistentInduced,
  NotEven,
  Degenerate,
  EvenSequence,
  NonOrientablePlus,
  IndexInconsistent,
  DivisibilityViolated,
  NotSpin,
  ResourceCap,
  InvalidInput,
  InternalInvariant,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

const char* errc_name(Errc code);

}  // namespace ovalsieve
