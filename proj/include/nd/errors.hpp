#ifndef ND_ERRORS_HPP
#define ND_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace nd {

struct NotDivisible : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotDivisibleInJets : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularJacobian : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoRegularPair : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LiftFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A syntax or naming error; column is 1-based within the parsed text.
struct ParseError : std::invalid_argument {
  ParseError(std::size_t column, std::string reason, const std::string& what)
      : std::invalid_argument(what), column(column), reason(std::move(reason)) {}
  std::size_t column;
  std::string reason;
};

inline constexpr const char* kBoundTooSmall = "the bound is too small";

struct BoundTooSmall : std::runtime_error {
  BoundTooSmall() : std::runtime_error(kBoundTooSmall) {}
};

// Wraps an error with the algorithm step that raised it.
struct StepError : std::runtime_error {
  StepError(int step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step(step) {}
  int step;
};

}  // namespace nd

#endif
