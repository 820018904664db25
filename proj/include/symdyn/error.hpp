#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symdyn {

/// A precondition on an argument was violated (empty word, zero length,
/// alphabet mismatch, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An enumeration or search would exceed its configured budget.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace symdyn
