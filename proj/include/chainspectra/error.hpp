#pragma once

#include <stdexcept>
#include <string>

namespace chainspectra {

/// Invalid input: malformed configuration, violated preconditions, exceeded caps.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation that is well-formed but refused because its validity
/// condition does not hold (for example the eigenvalue series on an
/// irregular chain).
class RefusalError : public std::runtime_error {
public:
  explicit RefusalError(const std::string& what) : std::runtime_error(what) {}
};

/// Internal consistency failure of a numerical procedure.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace chainspectra
