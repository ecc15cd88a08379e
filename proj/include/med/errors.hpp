#pragma once

#include <stdexcept>
#include <string>

namespace med {

// Input data violates a model invariant (bad graph, bad parameters, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input bytes could not be parsed into the requested structure.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two edges overlap along a common line. The morphing model has no
// semantics for this configuration, so the whole layout is rejected.
class CollinearOverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace med
