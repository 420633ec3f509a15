#pragma once

#include <stdexcept>
#include <string>

namespace synco {

// Malformed user input: files, literals, out-of-range arguments.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured budget or cap would be exceeded; nothing was computed.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation's documented precondition does not hold.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace synco
