#pragma once

// Closed-form correlation functions of Majorana roots for the isotropic
// ensemble: Gaussian conditioning on f = 0 at k points, the pairing-sum
// (hafnian) evaluation, the explicit two-point function and its large-l
// limit.

#include <complex>
#include <span>

#include <Eigen/Core>

namespace multipoles {

using complex = std::complex<double>;

/// Second moments of f and f' at two points of the plane. Suffix _c marks
/// a conjugated factor, e.g. dfc_f = <f_i'^* f_j>.
struct KernelValues {
  complex ff_c;    // <f_i^* f_j>   = (1 + zi^* zj)^{2l}
  complex ff;      // <f_i f_j>     = (zi - zj)^{2l}
  complex dfc_f;   // <f_i'^* f_j>  = 2l zj (1 + zi^* zj)^{2l-1}
  complex df_f;    // <f_i' f_j>    = 2l (zi - zj)^{2l-1}
  complex fc_df;   // <f_i^* f_j'>  = 2l zi^* (1 + zi^* zj)^{2l-1}
  complex f_df;    // <f_i f_j'>    = -2l (zi - zj)^{2l-1}
  complex dfc_df;  // <f_i'^* f_j'> = 2l (1 + 2l zi^* zj)(1 + zi^* zj)^{2l-2}
  complex df_df;   // <f_i' f_j'>   = -2l(2l-1) (zi - zj)^{2l-2}
};

KernelValues pair_kernels(complex zi, complex zj, int ell);

/// Covariance of F = (f_1..f_k, f_1^*..f_k^*, f_1'..f_k', f_1'^*..f_k'^*),
/// M_ij = <F_i^* F_j>, split as M = [[A, B], [B^H, C]].
struct CorrelationBundle {
  int k = 0;
  Eigen::MatrixXcd M;
  Eigen::MatrixXcd A;
  Eigen::MatrixXcd B;
  Eigen::MatrixXcd C;
  /// Covariance of the derivatives conditioned on f = 0: C - B^H A^{-1} B.
  Eigen::MatrixXcd N;
  double detA = 0.0;
  /// S_pq = <v_p v_q> for v = (f_1'..f_k', f_1'^*..f_k'^*); S_pq = N_{sigma(p) q}
  /// where sigma swaps the two halves.
  Eigen::MatrixXcd S;
};

/// Supports 1 <= k <= 4 points. Throws DegenerateInput for coincident or
/// antipodal points (angle within 1e-10 rad) or det A below 1e-300.
CorrelationBundle assemble_bundle(std::span<const complex> points, int ell);

/// Sum over all perfect matchings of {0..n-1} of the product of paired
/// entries (upper triangle). n must be even.
complex hafnian(const Eigen::MatrixXcd& s);

/// k-point correlation density of roots in the plane:
/// hafnian(S) / (pi^k sqrt(det A)).
double rho_k(std::span<const complex> points, int ell);

/// Scalars of the two-point function for the points 0 and r.
struct Rho2Scalars {
  double a, b, c, d, u, v, w, D;
};
Rho2Scalars rho2_scalars(int ell, double r);

/// Default MPFR significand length for the extended-precision path.
inline constexpr unsigned kDefaultPrecisionBits = 256;

/// True when rho2_explicit switches to MPFR arithmetic (l > 30 or r < 0.1).
bool uses_extended_precision(int ell, double r);

/// Explicit two-point density in the plane for the points 0 and r, l >= 2.
/// Throws DegenerateInput at r <= 0 and FormatError for l < 2.
double rho2_explicit(int ell, double r, unsigned precision_bits = kDefaultPrecisionBits);

/// One-point density on the sphere, 2l / 4pi.
double sphere_density(int ell);

/// Two-point density on the unit sphere for points separated by theta,
/// 0 < theta < pi; values above pi/2 come from the mirror angle pi - theta.
/// If normalized, divided by sphere_density(ell)^2.
double rho_sphere(int ell, double theta, bool normalized, unsigned precision_bits = kDefaultPrecisionBits);

/// Closed form for l = 2:
/// (4/4pi)^2 27 (1 - cos^2 theta) / (2 (3 + cos^2 theta)^{5/2}).
double rho_sphere_l2(double theta, bool normalized);

/// Large-l limit of the normalized two-point function,
/// g(R) = ((sinh^2 x + x^2) cosh x - 2 x sinh x) / sinh^3 x with x = R^2.
double hannay_g(double R);

struct GMaximum {
  double R;
  double g;
};
/// Golden-section maximum of hannay_g on [0.5, 3].
GMaximum g_maximum();

/// sup over R of |normalized rho_sphere(l, 2 atan(R / sqrt(l))) - g(R)|, l >= 10.
double limit_deviation(int ell, std::span<const double> R_grid,
                       unsigned precision_bits = kDefaultPrecisionBits);

}  // namespace multipoles
