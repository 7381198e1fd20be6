#pragma once

#include <stdexcept>
#include <string>

namespace siggm {

/// Malformed or inconsistent user input (bad dimensions, non-finite data, unreadable files).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented invariant of a domain type failed to hold.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A function was evaluated outside its domain (e.g. log-determinant of a non-PD matrix).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative solver could not produce a usable iterate.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace siggm
