#pragma once

#include <stdexcept>
#include <string>

namespace plusctl {

/// Input text could not be parsed. `position` is a byte offset into the source.
struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(std::string msg, std::size_t pos)
      : std::runtime_error(std::move(msg) + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
};

/// A structural precondition failed (mismatched alphabets, non-trivial relator
/// image, dimension mismatch, and so on).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured resource limit was hit (coset table overflow, word blowup).
/// Maps to exit code 2 in the command line tool.
struct ResourceExhausted : std::runtime_error {
  explicit ResourceExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace plusctl
