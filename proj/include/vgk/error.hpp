#pragma once

#include <stdexcept>
#include <string>

namespace vgk {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raised by the mini-C frontend; carries a source position.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}

  int line;
  int col;
};

} // namespace vgk
