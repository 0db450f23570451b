#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace verbalrat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input; `position` is the 0-based byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An operation was called outside its domain (e.g. improper word, identity syllable).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration or recursion cap was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace verbalrat
