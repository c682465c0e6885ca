#pragma once

#include <stdexcept>
#include <string>

namespace qsum {

// Malformed input: parse failures, shape mismatches, missing records.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structure failed an algebraic check (quandle axioms, cocycle conditions).
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Search or scan exceeded a configured budget or a hard capacity bound.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands from different fields, quandles or ring bases were mixed.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qsum
