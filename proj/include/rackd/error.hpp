#pragma once

#include <stdexcept>
#include <string>

namespace rackd {

// Thrown on precondition violations and malformed input. Search outcomes
// such as OVERFLOW or UNKNOWN are ordinary return values, never exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rackd
