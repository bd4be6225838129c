#pragma once

#include <stdexcept>
#include <string>

namespace pcf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad indices, non-manifold gluing, unreadable files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A triangle violates the strict triangle inequality under the active metric.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// The surface has the wrong topology for the requested operation.
class TopologyError : public Error {
 public:
  using Error::Error;
};

/// Linear algebra failed (singular system, residual bound not met).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public NumericalError {
 public:
  SingularMatrixError(const std::string& what, int pivot)
      : NumericalError(what), pivot_(pivot) {}
  int pivot() const { return pivot_; }

 private:
  int pivot_;
};

}  // namespace pcf
