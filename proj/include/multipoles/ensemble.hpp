#pragma once

// Reality-constrained coefficient vectors of fixed-degree spherical
// functions and the isotropic Gaussian ensemble over them.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "multipoles/error.hpp"

namespace multipoles {

using complex = std::complex<double>;

/// Random stream used throughout the library.
using Rng = std::mt19937_64;

/// Build an independent stream from a master seed and a stream index.
/// Identical (seed, stream) pairs always yield identical sequences.
Rng make_stream(std::uint64_t seed, std::uint64_t stream = 0);

/// Coefficients a_m, m = 0..ell, of a real function sum_m a_m Y_l^m.
/// Negative orders are never stored; a_{-m} = (-1)^m conj(a_m).
class CoefficientVector {
 public:
  /// Tolerance on |Im a_0| accepted by the constructor (and by the file reader).
  static constexpr double kImagTolerance = 1e-12;

  /// Throws FormatError if coeffs.size() != ell + 1 or a_0 is not real
  /// within kImagTolerance. A tolerated imaginary residue on a_0 is dropped.
  CoefficientVector(int ell, std::vector<complex> coeffs);

  int ell() const { return ell_; }
  std::span<const complex> coeffs() const { return coeffs_; }

  /// a_m for any m in [-ell, ell].
  complex operator[](int m) const;

  /// Same function multiplied by a real constant.
  CoefficientVector scaled(double factor) const;

  /// Sum of |a_m|^2 over m = -ell..ell.
  double full_norm_squared() const;

  friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;

 private:
  int ell_;
  std::vector<complex> coeffs_;
};

/// Draw from the isotropic ensemble: a_0 ~ N(0, 1) real, and for m >= 1 the
/// real and imaginary parts of a_m are independent N(0, 1/2).
CoefficientVector sample_coefficients(int ell, Rng& rng);

/// Full range a_{-ell}..a_{ell}; index m + ell.
std::vector<complex> expand_full(const CoefficientVector& cv);

// JSON: {"l": <int>, "a": [[re, im], ...]} with l + 1 entries indexed by m.
CoefficientVector read_coefficients(std::istream& in);
void write_coefficients(const CoefficientVector& cv, std::ostream& out);
CoefficientVector coefficients_from_json(const std::string& text);
std::string coefficients_to_json(const CoefficientVector& cv);

}  // namespace multipoles
