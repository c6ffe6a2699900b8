#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mag {

enum class ErrorKind {
  ShapeMismatch,
  Range,
  SelfLoop,
  Overflow,
  Format,
  Length,
  Canonicality,
  Parse,
  Duplicate,
  NotSnapshot,
  NotIntervalRestricted,
  Argument,
  Adapter,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ShapeMismatch: return "shape-mismatch";
    case ErrorKind::Range: return "range";
    case ErrorKind::SelfLoop: return "self-loop";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::Format: return "format";
    case ErrorKind::Length: return "length";
    case ErrorKind::Canonicality: return "canonicality";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Duplicate: return "duplicate";
    case ErrorKind::NotSnapshot: return "not-snapshot";
    case ErrorKind::NotIntervalRestricted: return "not-interval-restricted";
    case ErrorKind::Argument: return "argument";
    case ErrorKind::Adapter: return "adapter";
  }
  return "unknown";
}

// Every failure raised by the library carries one of the kinds above, so
// callers (the CLI, the fuzz harness) can classify it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mag
