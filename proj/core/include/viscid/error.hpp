#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace viscid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Array or tensor shapes that do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A precondition on a domain value was violated (non-positive dx, empty grid, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An iterative solver stopped before reaching its tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual, std::size_t iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

/// Binary container errors. Each failure mode has its own type so callers
/// can tell a damaged file from an incompatible one.
class FormatError : public Error {
 public:
  using Error::Error;
};

class TruncatedError : public FormatError {
 public:
  using FormatError::FormatError;
};

class VersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

class ChecksumError : public FormatError {
 public:
  using FormatError::FormatError;
};

/// Layer shapes in a weight manifest do not chain into a valid network.
class ManifestError : public FormatError {
 public:
  using FormatError::FormatError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace viscid
