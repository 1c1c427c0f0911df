#pragma once

#include <stdexcept>
#include <string>

namespace metalg {

/// Malformed input or a violated precondition.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured enumeration or size bound would be exceeded.
class BoundError : public std::runtime_error {
 public:
  BoundError(std::string bound, std::size_t limit, std::size_t requested)
      : std::runtime_error("bound '" + bound + "' exceeded: " + std::to_string(requested) +
                           " > " + std::to_string(limit)),
        bound_(std::move(bound)),
        limit_(limit),
        requested_(requested) {}

  const std::string& bound() const { return bound_; }
  std::size_t limit() const { return limit_; }
  std::size_t requested() const { return requested_; }

 private:
  std::string bound_;
  std::size_t limit_;
  std::size_t requested_;
};

/// Syntax error at a byte offset of the parsed text.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace metalg
