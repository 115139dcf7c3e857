#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace seedpa {

// Bad arguments or malformed domain objects (invalid distributions,
// length mismatches, parameters out of range).
class validation_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Not enough data for a statistically meaningful estimate.
class estimation_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Instance exceeds the enumeration bounds of an exhaustive computation.
class resource_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed config file, unknown or duplicate key.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what, std::string offending_key = {})
      : std::runtime_error(what), key(std::move(offending_key)) {}
  std::string key;
};

// File could not be read or written.
class io_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace seedpa
