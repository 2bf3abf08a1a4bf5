#pragma once

#include <stdexcept>
#include <string>

namespace apg {

enum class ErrorKind {
  Parse,         // malformed text (type, term, value, key, JSON, CSV)
  Unknown,       // unknown label, identifier, primitive or element
  Type,          // a value or term does not have the expected type
  Precondition,  // operation called outside its domain
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failure with a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : Error(ErrorKind::Parse,
              what + " at position " + std::to_string(pos)),
        pos_(pos) {}

  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace apg
