#pragma once

#include <stdexcept>
#include <string>

namespace gct {

// Caller supplied something outside an operation's domain.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input; line is 1-based, 0 when unknown.
class ParseError : public InvalidInput {
 public:
  ParseError(int line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A search ran out of its wall-clock budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sanity gate tripped: the computation produced an impossible value.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gct
