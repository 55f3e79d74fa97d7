#pragma once

#include <stdexcept>
#include <string>

namespace seisresid {

enum class ErrorKind {
  parse,       // malformed input text
  schema,      // well-formed rows that disagree about layout
  validation,  // values outside their legal range
  domain,      // operation preconditions not met
  io,
  usage,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Parse failure tied to a 1-based input line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace seisresid
