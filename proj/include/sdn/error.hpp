#pragma once

#include <stdexcept>
#include <string>

namespace sdn {

/// Malformed input data or files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated operation precondition (bad parameters, out-of-range indices,
/// inputs outside an operation's domain).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sdn
