#pragma once

#include <stdexcept>
#include <string>

namespace fti {

// Bad input file or bad configuration (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed embedding file; the message names the line or byte offset.
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

// Dimensionality or shape disagreement between inputs (CLI exit code 3).
class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine failed to meet its tolerance (CLI exit code 4).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fti
