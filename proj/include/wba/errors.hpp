#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wba {

// Exit-code taxonomy: 2 validation, 3 resource/budget, 4 violated invariant.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvariantViolation : std::runtime_error {
  explicit InvariantViolation(const std::string& msg) : std::runtime_error(msg) {}
};

// A dangerous interval longer than half the current interval: the certified
// lower bound cannot support the move.
struct Fact1Violation : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

// Two distinct (p,q) pairs of one stage meet the current interval: the
// certified lower bound is not valid at this range.
struct Fact2Violation : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

// A nonzero integer point inside a box that gamma promises empty; carries the
// witness so the caller can shrink gamma and rebuild.
struct GammaTooLarge : InvariantViolation {
  GammaTooLarge(const std::string& msg, std::vector<long long> u, std::vector<long long> v)
      : InvariantViolation(msg), witness_u(std::move(u)), witness_v(std::move(v)) {}
  std::vector<long long> witness_u;
  std::vector<long long> witness_v;
};

// The psi table has no bracketing pair for the requested threshold.
struct RangeExhausted : BudgetError {
  RangeExhausted(const std::string& msg, long long max_q)
      : BudgetError(msg), max_admissible_q(max_q) {}
  long long max_admissible_q;
};

}  // namespace wba
