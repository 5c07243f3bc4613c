#pragma once

// Majorana (stellar) polynomial of a real spherical function and the
// extraction of its Maxwell multipole axes from the polynomial's roots.

#include <span>
#include <vector>

#include "multipoles/ensemble.hpp"
#include "multipoles/sphere.hpp"

namespace multipoles {

/// f(zeta) = sum_{m=-l}^{l} (-1)^m sqrt(binom(2l, l+m)) a_m zeta^{l+m}.
/// Stored coefficients satisfy true_c_j = coeffs[j] * exp(log_scale).
struct MajoranaPolynomial {
  int ell = 0;
  std::vector<complex> coeffs;  // index j = l + m, size 2l + 1
  double log_scale = 0.0;

  /// Degree above which binomials come from log-gamma and the vector is
  /// rescaled to unit maximum modulus.
  static constexpr int kLogGammaThreshold = 85;
};

MajoranaPolynomial build_polynomial(const CoefficientVector& cv);

/// Max over j of |c_{2l-j} - (-1)^{l+j} conj(c_j)| / max_j |c_j|; zero in
/// exact arithmetic for any polynomial built from a real function.
double antipodal_defect(const MajoranaPolynomial& p);

struct RootOptions {
  /// Largest degree l handled by the companion-matrix solver; above it the
  /// Aberth-Ehrlich iteration is used.
  int companion_max_ell = 50;
  /// End coefficients count as zero, deflating roots at 0 and infinity, when
  /// c_j / sqrt(binom(2l, j)) is below this fraction of its largest value.
  double zero_threshold = 1e-14;
  /// Relative backward error allowed for every root.
  double residual_tolerance = 1e-6;
};

struct RootSet {
  std::vector<ProjectivePoint> roots;  // exactly 2l, with multiplicity
  double max_residual = 0.0;           // max relative backward error
};

/// All 2l projective roots. Throws DegenerateInput for the zero polynomial
/// and ToleranceError when a root's backward error exceeds the tolerance.
RootSet find_roots(const MajoranaPolynomial& p, const RootOptions& options = {});

struct MultipoleSet {
  int ell = 0;
  std::vector<UnitAxis> axes;
  double pairing_residual = 0.0;  // max angle(v_i, -v_j) over matched pairs, radians
  double root_residual = 0.0;     // max relative backward error of the roots
};

/// Greedy matching on the angle between each root and the antipode of
/// another, smallest first. Each pair becomes the axis through the midpoint
/// of v_i and -v_j. Throws ToleranceError if the residual exceeds tol.
MultipoleSet pair_antipodes(std::span<const ProjectivePoint> roots, double tol = 1e-6);

struct MultipoleOptions {
  RootOptions roots;
  double pairing_tolerance = 1e-6;
};

/// build_polynomial -> find_roots -> pair_antipodes.
MultipoleSet multipoles(const CoefficientVector& cv, const MultipoleOptions& options = {});

}  // namespace multipoles
