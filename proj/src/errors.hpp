#pragma once

#include <stdexcept>

namespace splbee {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a model turns out unsatisfiable (propagation contradiction,
// or full repair requested on an unsatisfiable clause set).
struct UnsatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an enumeration bound is exceeded (e.g. oracle on >24 free features).
struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace splbee
