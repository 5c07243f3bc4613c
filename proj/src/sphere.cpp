#include "multipoles/sphere.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace multipoles {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Normalized associated Legendre values N_l^m P_l^m(cos theta), m = 0..l,
// including the Condon-Shortley phase, so Y_l^m = row[m] e^{i m phi}.
std::vector<double> legendre_row(int l, double theta) {
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<double> row(static_cast<std::size_t>(l) + 1, 0.0);
  double pmm = std::sqrt(1.0 / kFourPi);
  for (int m = 0; m <= l; ++m) {
    if (m > 0) pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    if (m == l) {
      row[static_cast<std::size_t>(m)] = pmm;
      break;
    }
    double prev = pmm;
    double cur = x * std::sqrt(2.0 * m + 3.0) * pmm;
    double a_prev = std::sqrt(2.0 * m + 3.0);
    for (int k = m + 2; k <= l; ++k) {
      const double kk = k;
      const double a = std::sqrt((4.0 * kk * kk - 1.0) / (kk * kk - double(m) * m));
      const double next = a * (x * cur - prev / a_prev);
      prev = cur;
      cur = next;
      a_prev = a;
    }
    row[static_cast<std::size_t>(m)] = cur;
  }
  return row;
}

Eigen::Matrix3d rot_z(double a) {
  Eigen::Matrix3d r;
  r << std::cos(a), -std::sin(a), 0.0, std::sin(a), std::cos(a), 0.0, 0.0, 0.0, 1.0;
  return r;
}

Eigen::Matrix3d rot_y(double b) {
  Eigen::Matrix3d r;
  r << std::cos(b), 0.0, std::sin(b), 0.0, 1.0, 0.0, -std::sin(b), 0.0, std::cos(b);
  return r;
}

}  // namespace

UnitAxis::UnitAxis(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DegenerateInput("axis from zero or non-finite vector");
  v_ = v / n;
  bool flip;
  if (std::abs(v_.z()) > kZeroTolerance) {
    flip = v_.z() < 0.0;
  } else if (std::abs(v_.x()) > kZeroTolerance) {
    flip = v_.x() < 0.0;
  } else {
    flip = v_.y() < 0.0;
  }
  if (flip) v_ = -v_;
}

ProjectivePoint::ProjectivePoint(complex alpha, complex beta) {
  const double na = std::abs(alpha);
  const double nb = std::abs(beta);
  if (!(na > 0.0 || nb > 0.0)) throw DegenerateInput("projective point (0, 0)");
  if (na >= nb) {
    alpha_ = 1.0;
    beta_ = beta / alpha;
  } else {
    alpha_ = alpha / beta;
    beta_ = 1.0;
  }
}

complex ProjectivePoint::zeta() const {
  if (is_infinite()) throw DegenerateInput("zeta requested at infinity");
  return alpha_ / beta_;
}

Vec3 inverse_stereographic(const ProjectivePoint& p) {
  const complex a = p.alpha();
  const complex b = p.beta();
  const double na = std::norm(a);
  const double nb = std::norm(b);
  const double denom = na + nb;
  const complex xy = 2.0 * a * std::conj(b) / denom;
  return Vec3(xy.real(), xy.imag(), (nb - na) / denom);
}

ProjectivePoint stereographic(const Vec3& v) {
  const Vec3 u = v.normalized();
  if (u.z() >= 0.0) return ProjectivePoint::from_zeta(complex(u.x(), u.y()) / (1.0 + u.z()));
  return ProjectivePoint(1.0, complex(u.x(), -u.y()) / (1.0 - u.z()));
}

ProjectivePoint antipode(const ProjectivePoint& p) {
  return ProjectivePoint(-std::conj(p.beta()), std::conj(p.alpha()));
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

double axis_angle(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), std::abs(a.dot(b)));
}

double point_angle(const ProjectivePoint& a, const ProjectivePoint& b) {
  return angle_between(inverse_stereographic(a), inverse_stereographic(b));
}

complex spherical_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || m < -l || m > l) throw FormatError("spherical harmonic index out of range");
  const int am = std::abs(m);
  const double p = legendre_row(l, theta)[static_cast<std::size_t>(am)];
  const complex y = std::polar(p, am * phi);
  if (m >= 0) return y;
  return (am % 2 == 0) ? std::conj(y) : -std::conj(y);
}

complex synthesize(const CoefficientVector& cv, double theta, double phi) {
  const int l = cv.ell();
  const auto row = legendre_row(l, theta);
  complex total = cv[0] * row[0];
  for (int m = 1; m <= l; ++m) {
    const complex y = std::polar(row[static_cast<std::size_t>(m)], m * phi);
    const complex y_neg = (m % 2 == 0) ? std::conj(y) : -std::conj(y);
    total += cv[m] * y + cv[-m] * y_neg;
  }
  return total;
}

double evaluate_function(const CoefficientVector& cv, double theta, double phi) {
  return synthesize(cv, theta, phi).real();
}

Eigen::Matrix3d rotation_matrix(const EulerAngles& euler) {
  return rot_z(euler.alpha) * rot_y(euler.beta) * rot_z(euler.gamma);
}

Eigen::MatrixXd wigner_small_d(int l, double beta) {
  const int dim = 2 * l + 1;
  Eigen::MatrixXd d(dim, dim);
  const long double c = std::cos(static_cast<long double>(beta) / 2.0L);
  const long double s = std::sin(static_cast<long double>(beta) / 2.0L);
  auto lf = [](int n) { return std::lgamma(static_cast<long double>(n) + 1.0L); };
  for (int mp = -l; mp <= l; ++mp) {
    for (int m = -l; m <= l; ++m) {
      const long double prefactor = 0.5L * (lf(l + mp) + lf(l - mp) + lf(l + m) + lf(l - m));
      const int s_lo = std::max(0, m - mp);
      const int s_hi = std::min(l + m, l - mp);
      long double sum = 0.0L;
      for (int k = s_lo; k <= s_hi; ++k) {
        const long double log_mag =
            prefactor - lf(l + m - k) - lf(k) - lf(mp - m + k) - lf(l - mp - k);
        const long double term = std::exp(log_mag) * std::pow(c, 2 * l + m - mp - 2 * k) *
                                 std::pow(s, mp - m + 2 * k);
        sum += ((mp - m + k) % 2 == 0) ? term : -term;
      }
      d(mp + l, m + l) = static_cast<double>(sum);
    }
  }
  return d;
}

CoefficientVector rotate_coefficients(const CoefficientVector& cv, const EulerAngles& euler) {
  const int l = cv.ell();
  const Eigen::MatrixXd d = wigner_small_d(l, euler.beta);
  std::vector<complex> out(static_cast<std::size_t>(l) + 1);
  for (int mp = 0; mp <= l; ++mp) {
    complex acc = 0.0;
    for (int m = -l; m <= l; ++m) {
      acc += std::polar(d(mp + l, m + l), -(mp * euler.alpha + m * euler.gamma)) * cv[m];
    }
    out[static_cast<std::size_t>(mp)] = acc;
  }
  // a'_0 is real in exact arithmetic.
  out[0] = complex(out[0].real(), 0.0);
  return CoefficientVector(l, std::move(out));
}

Eigen::Matrix2cd mobius_of_rotation(const EulerAngles& euler) {
  auto uz = [](double a) {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Zero();
    u(0, 0) = std::polar(1.0, a / 2.0);
    u(1, 1) = std::polar(1.0, -a / 2.0);
    return u;
  };
  Eigen::Matrix2cd uy;
  const double c = std::cos(euler.beta / 2.0);
  const double s = std::sin(euler.beta / 2.0);
  uy << c, s, -s, c;
  return uz(euler.alpha) * uy * uz(euler.gamma);
}

ProjectivePoint apply_mobius(const Eigen::Matrix2cd& u, const ProjectivePoint& p) {
  return ProjectivePoint(u(0, 0) * p.alpha() + u(0, 1) * p.beta(),
                         u(1, 0) * p.alpha() + u(1, 1) * p.beta());
}

}  // namespace multipoles
