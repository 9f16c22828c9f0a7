#pragma once

#include <stdexcept>
#include <string>

namespace obstruct {

/// Invalid argument or violated precondition.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested work exceeds a configured budget (net size, enumeration
/// length, candidate cap).
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A step that a construction guarantees has failed. Never silent.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace obstruct
