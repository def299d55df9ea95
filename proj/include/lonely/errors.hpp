#pragma once

#include <stdexcept>
#include <string>

namespace lonely {

/// A precondition on caller-supplied values was violated (bad speed list,
/// out-of-range rational, malformed text, mismatched config, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// An exact result does not fit the engine's fixed integer width.
/// Results are never wrapped; every overflow surfaces as this exception.
class ArithmeticOverflow : public std::overflow_error {
 public:
  explicit ArithmeticOverflow(const std::string& what) : std::overflow_error(what) {}
};

/// Filesystem or persisted-state failure (unwritable output, corrupt checkpoint).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lonely
