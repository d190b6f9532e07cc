#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twdist {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based, 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

class DisconnectedError : public Error {
 public:
  using Error::Error;
};

// A configured size limit (oracle cap, subset-lattice cap) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace twdist
