#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hdg {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent arguments (dimension mismatch, broken invariants).
class InputError : public Error {
 public:
  using Error::Error;
};

// A graphon or graph document could not be parsed.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what)
      : Error("parse error at '" + field + "': " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Raised when an operation needs a connected skeleton.
class DisconnectedSkeleton : public Error {
 public:
  explicit DisconnectedSkeleton(std::vector<std::vector<std::size_t>> components)
      : Error(describe(components)), components_(std::move(components)) {}

  const std::vector<std::vector<std::size_t>>& components() const noexcept {
    return components_;
  }

 private:
  static std::string describe(const std::vector<std::vector<std::size_t>>& comps) {
    std::string s = "skeleton graph is disconnected; components:";
    for (const auto& c : comps) {
      s += " {";
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(c[k] + 1);
      }
      s += "}";
    }
    return s;
  }

  std::vector<std::vector<std::size_t>> components_;
};

}  // namespace hdg
