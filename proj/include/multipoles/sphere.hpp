#pragma once

// Geometry on the unit sphere: stereographic coordinates, sign-ambiguous
// axes, spherical-harmonic synthesis and rotations.

#include <complex>

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/LU>

#include "multipoles/ensemble.hpp"

namespace multipoles {

using Vec3 = Eigen::Vector3d;

/// A unit direction up to sign, stored in canonical form: z > 0, or z = 0
/// and x > 0, or z = x = 0 and y > 0. Components within kZeroTolerance of
/// zero count as zero when choosing the sign.
class UnitAxis {
 public:
  static constexpr double kZeroTolerance = 1e-12;

  /// Normalizes and canonicalizes v. Throws DegenerateInput for v = 0.
  explicit UnitAxis(const Vec3& v);

  const Vec3& vector() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }

 private:
  Vec3 v_;
};

/// Point of the Riemann sphere, zeta = alpha / beta. The larger of the two
/// components is stored as exactly 1, so beta == 0 is the point at infinity.
class ProjectivePoint {
 public:
  /// Throws DegenerateInput if both components vanish.
  ProjectivePoint(complex alpha, complex beta);

  static ProjectivePoint from_zeta(complex zeta) { return {zeta, 1.0}; }
  static ProjectivePoint infinity() { return {1.0, 0.0}; }

  complex alpha() const { return alpha_; }
  complex beta() const { return beta_; }
  bool is_infinite() const { return beta_ == complex(0.0); }
  bool is_zero() const { return alpha_ == complex(0.0); }
  /// True when |zeta| <= 1, i.e. the stored beta is 1.
  bool in_unit_disk() const { return beta_ == complex(1.0); }

  /// zeta itself; throws DegenerateInput at infinity.
  complex zeta() const;

 private:
  complex alpha_;
  complex beta_;
};

/// zeta = exp(i phi) tan(theta / 2)  ->  (sin t cos p, sin t sin p, cos t).
Vec3 inverse_stereographic(const ProjectivePoint& p);
/// Inverse of inverse_stereographic; v need only be non-zero.
ProjectivePoint stereographic(const Vec3& v);
/// -1 / conj(zeta): the opposite point of the sphere.
ProjectivePoint antipode(const ProjectivePoint& p);

/// Angle between two directions in [0, pi], accurate near 0 and pi.
double angle_between(const Vec3& a, const Vec3& b);
/// Angle between two axes (sign-insensitive), in [0, pi/2].
double axis_angle(const Vec3& a, const Vec3& b);
/// Angle between two points of the Riemann sphere.
double point_angle(const ProjectivePoint& a, const ProjectivePoint& b);

/// Orthonormal Y_l^m with the Condon-Shortley phase, any m in [-l, l].
complex spherical_harmonic(int l, int m, double theta, double phi);

/// sum_{m=-l}^{l} a_m Y_l^m(theta, phi); imaginary part vanishes up to rounding.
complex synthesize(const CoefficientVector& cv, double theta, double phi);
/// Real part of synthesize().
double evaluate_function(const CoefficientVector& cv, double theta, double phi);

/// zyz Euler angles of an active rotation R = Rz(alpha) Ry(beta) Rz(gamma).
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

Eigen::Matrix3d rotation_matrix(const EulerAngles& euler);

/// Wigner small-d matrix d^l_{m'm}(beta), indices shifted by l.
Eigen::MatrixXd wigner_small_d(int l, double beta);

/// Coefficients of the rotated function Phi'(r) = Phi(R^{-1} r):
/// a'_{m'} = sum_m e^{-i m' alpha} d^l_{m'm}(beta) e^{-i m gamma} a_m.
/// The factorial sum loses accuracy through cancellation for l beyond a few dozen.
CoefficientVector rotate_coefficients(const CoefficientVector& cv, const EulerAngles& euler);

/// SU(2) matrix U whose Moebius action zeta -> (U00 zeta + U01) / (U10 zeta + U11)
/// moves the stereographic image of v to that of R v.
Eigen::Matrix2cd mobius_of_rotation(const EulerAngles& euler);
ProjectivePoint apply_mobius(const Eigen::Matrix2cd& u, const ProjectivePoint& p);

}  // namespace multipoles
