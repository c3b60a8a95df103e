#pragma once

#include <stdexcept>
#include <string>

namespace fatpoints {

// Exception hierarchy shared by the library and the CLI exit-code mapping.

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input files or strings (CLI exit code 2).
struct parse_error : error {
  using error::error;
};

// Violated operation preconditions: identical points, degree mismatches,
// bad parameter ranges (CLI exit code 3).
struct precondition_error : error {
  using error::error;
};

// A seeded generator exhausted its retry budget without satisfying its
// genericity predicates (CLI exit code 4).
struct genericity_error : error {
  using error::error;
};

// A computed result violated an internal invariant that is a theorem for
// valid inputs; always a bug, never data (CLI exit code 70).
struct internal_error : error {
  using error::error;
};

}  // namespace fatpoints
