#pragma once

#include <stdexcept>
#include <string>

namespace homcert {

/// Invalid user input (bad parameter, malformed config). Maps to exit code 2.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Internal numerical failure (underflow, truncation bound exceeded). Maps to exit code 3.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace homcert
