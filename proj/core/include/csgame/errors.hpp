#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csgame {

// Violated precondition or malformed input to an operation.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A choice function (plain or k-) that does not fit the family it is applied to.
class InvalidChoiceError : public ContractError {
 public:
  using ContractError::ContractError;
};

// Exclusion sets for k-multiplication that are too large or out of range.
class InvalidSelectionError : public ContractError {
 public:
  using ContractError::ContractError;
};

// A formula referenced a variable the assignment does not cover.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured search or enumeration budget was exhausted. Never means "false".
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace csgame
