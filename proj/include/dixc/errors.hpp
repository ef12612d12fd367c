#pragma once

#include <stdexcept>
#include <string>

namespace dixc {

// Malformed user input: compact notation, JSON documents, rationals.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally valid input that violates a model invariant (j in A_j,
// negative capacity, invalid decoding set, grouping that is not a partition).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exhaustive search would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation is undefined on an empty polyhedron.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dixc
