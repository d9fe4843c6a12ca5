#pragma once

#include <stdexcept>

namespace pedcmp {

// An algorithm was invoked on inputs outside its supported class; the
// message names the violated requirement.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive search refused: instance exceeds the configured size cap.
class TooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pedcmp
