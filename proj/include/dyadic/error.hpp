#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dyadic {

enum class ErrorCode {
  InvalidArgument = 1,
  Parse = 2,
  Io = 3,
  EmptyMeasure = 4,
  LimitExceeded = 5,
  Inconsistent = 6,
};

// All library failures are reported through this type so the C layer can map
// them onto status codes without inspecting message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dyadic
