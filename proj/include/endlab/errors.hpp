#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace endlab {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or mismatched group data (factor tables, normal forms, words).
class SpecError : public Error {
 public:
  using Error::Error;
};

struct Violation {
  std::string location;  // JSON pointer or field path
  std::string message;
};

// Configuration rejected; carries every violation found, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(summarize(violations)), violations_(std::move(violations)) {}
  ValidationError(std::string location, std::string message)
      : ValidationError(std::vector<Violation>{{std::move(location), std::move(message)}}) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& v) {
    std::string out = "validation failed";
    for (const auto& x : v) out += "\n  " + x.location + ": " + x.message;
    return out;
  }
  std::vector<Violation> violations_;
};

// A configured budget (vertices, sphere size, table size) would be exceeded.
class ResourceError : public Error {
 public:
  ResourceError(std::string what, std::size_t partial_count = 0,
                std::optional<int> largest_feasible = std::nullopt)
      : Error(std::move(what)), partial_count_(partial_count), largest_feasible_(largest_feasible) {}

  std::size_t partial_count() const noexcept { return partial_count_; }
  bool partial() const noexcept { return true; }
  std::optional<int> largest_feasible() const noexcept { return largest_feasible_; }

 private:
  std::size_t partial_count_;
  std::optional<int> largest_feasible_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Raised when an internal consistency check fails; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace endlab
