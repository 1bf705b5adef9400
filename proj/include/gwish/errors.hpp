#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gwish {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid numeric parameter (alpha <= -1, non-positive gamma shape, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Matrix dimensions do not fit the operation.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Input lies outside the domain of a density or closed form.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Coincident parameters or eigenvalues make a formula 0/0.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// Operation not available for the requested mode (e.g. patterned sampling of a
// GeneralReal alpha, mixing real and complex matrices).
class ModeError : public Error {
 public:
  using Error::Error;
};

// Ordering constraint 1+a_1 <= 2+a_2 <= ... <= N+a_N <= n violated.
class ConstraintError : public Error {
 public:
  ConstraintError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}

  // Zero-based index of the alpha entry at which the ordering first fails.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace gwish
