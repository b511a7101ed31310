#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

// Bad user input: malformed files, out-of-range parameters, invalid matrices.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Exhaustive enumeration would exceed the configured subset cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, long long count)
      : std::runtime_error(what), count_(count) {}
  long long count() const { return count_; }

 private:
  long long count_;
};

// A quantity the library guarantees by construction failed to hold.
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace riesz
