#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fibarc {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

// Input outside the domain of a geometric query (negative slope, x < 0, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

// Internal invariant broken; indicates a bug, never bad input.
class InternalError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace fibarc
