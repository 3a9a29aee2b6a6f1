#pragma once

#include <stdexcept>
#include <string>

namespace caq {

// Invalid inputs: malformed documents, violated invariants, bad CLI usage.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Remote I/O failures: connection refused, timeouts, unexpected HTTP status.
// Distinct from "component not found": a 404 is a valid answer.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace caq
