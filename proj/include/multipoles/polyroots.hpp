#pragma once

// Roots of dense complex polynomials, coefficients in ascending order
// (c[0] + c[1] z + ... + c[n] z^n).

#include <complex>
#include <span>
#include <vector>

namespace multipoles::polyroots {

using complex = std::complex<double>;

/// Value and derivative at z by Horner's rule.
struct Evaluation {
  complex value;
  complex derivative;
};
Evaluation evaluate(std::span<const complex> c, complex z);

/// Relative backward error |p(z)| / sum_j |c_j| |z|^j. Uses the reversed
/// polynomial for |z| > 1 so large roots do not overflow.
double backward_error(std::span<const complex> c, complex z);

/// Newton correction p(z) / p'(z), evaluated through the reversed
/// polynomial when |z| > 1.
complex newton_correction(std::span<const complex> c, complex z);

/// Eigenvalues of the balanced companion matrix. Requires c.back() != 0.
std::vector<complex> companion_roots(std::span<const complex> c);

/// Starting points on circles whose radii come from the upper convex hull
/// of (j, log|c_j|).
std::vector<complex> newton_polygon_guesses(std::span<const complex> c);

/// Aberth-Ehrlich simultaneous iteration from Newton-polygon guesses.
/// Requires c.front() != 0 and c.back() != 0.
std::vector<complex> aberth_roots(std::span<const complex> c, int max_iterations = 2000);

/// Newton steps on every root; a step is kept only if it lowers the backward
/// error and moves the root by less than half the distance to its nearest
/// neighbour.
void polish(std::span<const complex> c, std::vector<complex>& roots, int steps = 3);

}  // namespace multipoles::polyroots
