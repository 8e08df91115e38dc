#pragma once

#include <stdexcept>
#include <string>

namespace mincop {

/// Malformed arguments: dimension mismatches, points outside the cube, bad JSON.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Arguments that are well formed but outside the mathematical domain of the
/// operation (e.g. W in dimension three).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested computation has no route for this copula representation.
class UnsupportedRepresentation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value failed a copula validity check.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A self-check on a constructed object failed. Never expected on valid input.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mincop
