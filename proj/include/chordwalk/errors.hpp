#pragma once

#include <stdexcept>

namespace chordwalk {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative method failed to reach its tolerance within the iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The determinant-equation solver did not recover exactly N roots.
class RootCountError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenvector reconstruction is singular at this root (c1 vanishes).
class DegenerateBasisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chordwalk
