#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skydyon {

/// Invalid input value; `field()` names the offending argument.
class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Parameters outside the region where dyon solutions are known to exist.
class RegionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Non-finite or otherwise unusable numbers; carries the node index.
class NumericError : public std::runtime_error {
 public:
  NumericError(std::size_t node, const std::string& what)
      : std::runtime_error(what + " at node " + std::to_string(node)), node_(node) {}
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

/// Test function handed to the weak-form constraint does not vanish at r = R.
class TestFunctionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Decay fit could not be performed (typically: domain too short).
class DiagnosticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace skydyon
