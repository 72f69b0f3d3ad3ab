#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace probgraph {

// Caller broke a documented precondition (index out of range, mismatched
// sketch parameters, incompatible estimator/sketch pairing, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed input file. `line()` is 1-based; 0 when not line-specific.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// No sketch fits the requested storage budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested algorithm cannot run on the given provider, e.g. Adamic-Adar
// needs the members of an intersection and a Bloom filter cannot list them.
class UnsupportedCombination : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace probgraph
