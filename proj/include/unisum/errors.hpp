#pragma once

#include <stdexcept>
#include <string>

namespace unisum {

/// Malformed textual input (rational strings, JSON payloads).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A structural invariant of a value type is violated (total mass != 1,
/// piece with lo >= hi, negative mass, ...).
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

/// A long-running computation exceeded its caller-imposed deadline.
class TimeoutError : public std::runtime_error {
 public:
  explicit TimeoutError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace unisum
