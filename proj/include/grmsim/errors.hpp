#pragma once

#include <stdexcept>
#include <string>

namespace grmsim {

// Thrown when an argument or configuration value violates a documented
// precondition. Maps to process exit code 2 in the CLI.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a statistic is requested on inputs that cannot support it
// (constant vectors, too few observations). Exit code 4.
class DegenerateInputError : public std::runtime_error {
 public:
  explicit DegenerateInputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a value is asked of a profile outside its K range. Exit code 2.
class OutOfDomainError : public ValidationError {
 public:
  explicit OutOfDomainError(const std::string& msg) : ValidationError(msg) {}
};

// File system failures. Exit code 3.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace grmsim
