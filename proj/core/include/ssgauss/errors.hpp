#pragma once

#include <stdexcept>
#include <string>

namespace ssgauss {

// Argument outside the mathematical domain of an operation (negative time,
// x < 1, invalid model parameter, malformed grid).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A derivative that diverges at the requested point, e.g. d/dx (x-1)^a at
// x = 1 with a < 1.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// floor(n t) exceeds the number of assembled increments.
class GridError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The central limit theorem does not cover the configuration: Hermite rank
// below 2, or increment exponent alpha >= 2 - 1/d.
class GateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A numerical procedure failed to meet its contract (factorization failure,
// certificate not met within the iteration cap, non-positive variance).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ssgauss
