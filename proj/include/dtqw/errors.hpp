#pragma once

#include <stdexcept>
#include <string>

namespace dtqw {

// Bad input: malformed dims, out-of-range steps, inconsistent gates.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed request that the chosen strategy cannot handle.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dtqw
