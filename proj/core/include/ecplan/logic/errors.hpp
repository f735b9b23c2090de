#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ecplan::logic {

class LogicError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public LogicError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : LogicError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A variable lacks a positive body occurrence that can bind it.
class SafetyError : public LogicError {
 public:
  SafetyError(std::size_t statement, std::string variable, std::size_t line = 0)
      : LogicError("statement " + std::to_string(statement) +
                   (line ? " (line " + std::to_string(line) + ")" : std::string()) +
                   ": unsafe variable " + variable),
        statement_(statement),
        variable_(std::move(variable)) {}
  [[nodiscard]] std::size_t statement() const { return statement_; }
  [[nodiscard]] const std::string& variable() const { return variable_; }

 private:
  std::size_t statement_;
  std::string variable_;
};

class StratificationError : public LogicError {
 public:
  using LogicError::LogicError;
};

class UniverseError : public LogicError {
 public:
  using LogicError::LogicError;
};

class EvaluationError : public LogicError {
 public:
  using LogicError::LogicError;
};

class TooManyChoices : public LogicError {
 public:
  using LogicError::LogicError;
};

class Unsatisfiable : public LogicError {
 public:
  using LogicError::LogicError;
};

}  // namespace ecplan::logic
