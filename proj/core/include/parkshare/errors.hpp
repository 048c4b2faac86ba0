#pragma once

#include <stdexcept>
#include <string>

namespace parkshare {

// Malformed instance: mismatched time vectors, inconsistent preference lists.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A numeric parameter outside its admissible range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bad external record; the message names the offending record.
class IngestionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance too large for exhaustive enumeration.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace parkshare
