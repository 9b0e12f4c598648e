#pragma once

#include <stdexcept>
#include <string>

namespace coarse {

// Input violates an operation's precondition (maps to CLI exit code 2).
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Malformed input document (maps to CLI exit code 1).
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace coarse
