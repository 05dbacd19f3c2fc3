#pragma once

#include <stdexcept>
#include <string>

namespace lvi {

// Malformed or inadmissible input (bad file, wrong dimension, parameter out
// of range). The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical guarantee failed to hold. Every check that raises this is a
// theorem, so a violation always means an implementation bug. Exit code 1.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lvi
