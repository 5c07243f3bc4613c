#pragma once

#include <stdexcept>
#include <string>

namespace multipoles {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad coefficient files, out-of-range parameters.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Inputs where the requested quantity is undefined (coincident or
/// antipodal evaluation points, all-zero polynomials, theta at a pole).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A numerical residual check failed (root residual, antipodal pairing,
/// non-real hafnian).
class ToleranceError : public Error {
 public:
  using Error::Error;
};

}  // namespace multipoles
