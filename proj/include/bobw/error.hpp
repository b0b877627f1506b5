#pragma once

#include <stdexcept>
#include <string>

namespace bobw {

// Contract violations on inputs (CLI exit code 3).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A step, leaf or constraint cap was exhausted (CLI exit code 4).
class ResourceCapError : public std::runtime_error {
 public:
  ResourceCapError(const std::string& what, std::string diagnostic = {})
      : std::runtime_error(what), diagnostic_(std::move(diagnostic)) {}
  const std::string& diagnostic() const { return diagnostic_; }

 private:
  std::string diagnostic_;
};

// An internal invariant did not hold. Indicates a bug, never bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define BOBW_ENSURE(cond, msg)                 \
  do {                                         \
    if (!(cond)) throw ::bobw::InvariantError(msg); \
  } while (0)

}  // namespace bobw
