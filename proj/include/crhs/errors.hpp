#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crhs {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)), msg_(msg), offset_(offset) {}
  std::size_t offset() const { return offset_; }
  const std::string& message() const { return msg_; }

 private:
  std::string msg_;
  std::size_t offset_;
};

class EvalError : public std::runtime_error {
 public:
  enum class Kind { Branch, DivisionByZero, Singular };
  EvalError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Bad arguments: unknown names, parameter constraints, dimension mismatches.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crhs
