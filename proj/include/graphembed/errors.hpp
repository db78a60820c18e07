#pragma once

#include <stdexcept>
#include <string>

namespace graphembed {

// Malformed or semantically invalid input data (files, graphs, labels,
// configuration values).  The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure during computation (non-finite update, divergent series).
// The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace graphembed
