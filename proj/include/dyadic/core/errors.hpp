#pragma once

#include <stdexcept>

namespace dyadic {

/// Operation applied outside its mathematical domain (e.g. popping the empty word).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Halving an odd dyadic integer.
class ParityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A neighbour oracle was queried outside the window it can answer for.
class InsufficientContext : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graph structure contradicts the lattice patterns; indicates an oracle bug.
class StructureError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A random walk ran out of its step budget before the stopping rule fired.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver failed to reach its tolerance.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateLevel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dyadic
