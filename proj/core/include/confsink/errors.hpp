#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace confsink {

/// Malformed input: bad graph spec, invalid cell, non-cycle where a cycle is required, ...
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource cap was hit; the instance is beyond desk scale.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::size_t limit)
      : std::runtime_error(what + " (limit " + std::to_string(limit) + ")"), limit_(limit) {}

  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

}  // namespace confsink
