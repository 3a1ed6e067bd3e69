#pragma once

#include <stdexcept>
#include <string>

namespace bose2d {

/// Input outside the domain of a formula (a >= R, rho a^2 >= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A bound was requested at parameters where one of its validity
/// conditions fails. The message names the condition.
class ValidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure inside a solver (non-finite state, singular system).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bose2d
