#include "multipoles/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "bigfloat.hpp"
#include "multipoles/error.hpp"
#include "multipoles/sphere.hpp"

namespace multipoles {

namespace {

constexpr double kPi = std::numbers::pi;

complex ipow(complex z, int n) {
  if (n < 0) return 0.0;  // only reached for coefficients that carry a zero factor
  complex result = 1.0;
  complex base = z;
  for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
    if (e & 1U) result *= base;
    base *= base;
  }
  return result;
}

// <X Y> for X = (d-th derivative of f at point p, conjugated if cx), same for Y.
complex second_moment(std::span<const complex> z, int ell, int p, bool dx, bool cx, int q, bool dy,
                      bool cy) {
  const auto kv = pair_kernels(z[static_cast<std::size_t>(p)], z[static_cast<std::size_t>(q)], ell);
  if (cx != cy) {
    // <X^* Y> is the Hermitian kernel; <X Y^*> is its conjugate.
    complex herm;
    if (!dx && !dy) herm = kv.ff_c;
    else if (dx && !dy) herm = kv.dfc_f;
    else if (!dx && dy) herm = kv.fc_df;
    else herm = kv.dfc_df;
    return cx ? herm : std::conj(herm);
  }
  complex plain;
  if (!dx && !dy) plain = kv.ff;
  else if (dx && !dy) plain = kv.df_f;
  else if (!dx && dy) plain = kv.f_df;
  else plain = kv.df_df;
  return cx ? std::conj(plain) : plain;
}

complex hafnian_rec(const Eigen::MatrixXcd& s, std::vector<int>& free_idx) {
  if (free_idx.empty()) return 1.0;
  const int first = free_idx.front();
  complex total = 0.0;
  for (std::size_t t = 1; t < free_idx.size(); ++t) {
    const int partner = free_idx[t];
    std::vector<int> rest;
    rest.reserve(free_idx.size() - 2);
    for (std::size_t u = 1; u < free_idx.size(); ++u) {
      if (u != t) rest.push_back(free_idx[u]);
    }
    total += s(first, partner) * hafnian_rec(s, rest);
  }
  return total;
}

template <class T>
struct Scalars {
  T a, b, c, d, u, v, w, D;
};

template <class T>
Scalars<T> make_scalars(const T& r, int ell) {
  using std::pow;
  const long L = 2L * ell;
  const T one_r2 = 1.0 + r * r;
  T a = pow(one_r2, L);
  T b = static_cast<double>(L) * r;
  T c = static_cast<double>(L) * r * pow(one_r2, L - 1);
  T d = static_cast<double>(L) * (1.0 + static_cast<double>(L) * r * r) * pow(one_r2, L - 2);
  T u = pow(r, L);
  T v = -static_cast<double>(L) * pow(r, L - 1);
  T w = -static_cast<double>(L * (L - 1)) * pow(r, L - 2);
  T D = (a - 1.0 - u * u - 2.0 * u) * (a - 1.0 - u * u + 2.0 * u);
  return {a, b, c, d, u, v, w, D};
}

// Two-point density of roots at 0 and r in the plane.
template <class T>
T rho2_formula(const T& r, int ell, const T& pi) {
  using std::sqrt;
  const auto [a, b, c, d, u, v, w, D] = make_scalars(r, ell);
  const double two_l = 2.0 * ell;
  const T am = a - 1.0 - u * u;  // a - 1 - u^2
  const T ap = a + 1.0 - u * u;  // a + 1 - u^2
  const T aq = a - 1.0 + u * u;  // a - 1 + u^2

  const T first = (two_l * D - 4.0 * b * u * v - (b * b + v * v) * am) *
                  (d * D - 2.0 * c * u * v * ap - (c * c + a * v * v) * am);
  const T second = two_l * D - 2.0 * c * u * v - b * u * v * ap - v * v * aq - b * c * am;
  const T third = w * D - 2.0 * b * c * u - u * v * v * ap - b * v * aq - c * v * am;
  const T root_d = sqrt(D);
  const T denom = pi * pi * (root_d * root_d * root_d * root_d * root_d);
  return (first + second * second + third * third) / denom;
}

}  // namespace

KernelValues pair_kernels(complex zi, complex zj, int ell) {
  const int L = 2 * ell;
  const complex zic = std::conj(zi);
  const complex herm = 1.0 + zic * zj;
  const complex diff = zi - zj;
  const double l2 = L;
  KernelValues k;
  k.ff_c = ipow(herm, L);
  k.ff = ipow(diff, L);
  k.dfc_f = l2 * zj * ipow(herm, L - 1);
  k.df_f = l2 * ipow(diff, L - 1);
  k.fc_df = l2 * zic * ipow(herm, L - 1);
  k.f_df = -l2 * ipow(diff, L - 1);
  k.dfc_df = l2 * (1.0 + l2 * zic * zj) * ipow(herm, L - 2);
  k.df_df = -l2 * (l2 - 1.0) * ipow(diff, L - 2);
  return k;
}

CorrelationBundle assemble_bundle(std::span<const complex> points, int ell) {
  const int k = static_cast<int>(points.size());
  if (k < 1 || k > 4) throw FormatError("correlation bundle supports 1 to 4 points");
  if (ell < 1) throw FormatError("correlation bundle needs ell >= 1");
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const double angle = point_angle(ProjectivePoint::from_zeta(points[static_cast<std::size_t>(i)]),
                                       ProjectivePoint::from_zeta(points[static_cast<std::size_t>(j)]));
      if (angle < 1e-10) throw DegenerateInput("coincident evaluation points");
      if (angle > kPi - 1e-10) throw DegenerateInput("antipodal evaluation points");
    }
  }

  const int n = 4 * k;
  CorrelationBundle out;
  out.k = k;
  out.M.resize(n, n);
  // Slot s of F: point s % k, derivative if s >= 2k, conjugate in the odd blocks.
  auto point_of = [k](int s) { return s % k; };
  auto is_deriv = [k](int s) { return s >= 2 * k; };
  auto is_conj = [k](int s) { return (s / k) % 2 == 1; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // M_ij = <F_i^* F_j>: conjugation of slot i is flipped.
      out.M(i, j) = second_moment(points, ell, point_of(i), is_deriv(i), !is_conj(i), point_of(j),
                                  is_deriv(j), is_conj(j));
    }
  }
  const int h = 2 * k;
  out.A = out.M.topLeftCorner(h, h);
  out.B = out.M.topRightCorner(h, h);
  out.C = out.M.bottomRightCorner(h, h);

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(out.A);
  const complex det_a = lu.determinant();
  out.detA = det_a.real();
  if (!(out.detA > 1e-300) || !std::isfinite(out.detA)) {
    throw DegenerateInput("det A = " + std::to_string(out.detA) + " is not safely positive");
  }
  out.N = out.C - out.B.adjoint() * lu.solve(out.B);

  out.S.resize(h, h);
  for (int p = 0; p < h; ++p) {
    const int sigma = p < k ? p + k : p - k;
    for (int q = 0; q < h; ++q) out.S(p, q) = out.N(sigma, q);
  }
  return out;
}

complex hafnian(const Eigen::MatrixXcd& s) {
  if (s.rows() != s.cols() || s.rows() % 2 != 0) throw FormatError("hafnian needs an even square matrix");
  std::vector<int> idx(static_cast<std::size_t>(s.rows()));
  for (int i = 0; i < static_cast<int>(idx.size()); ++i) idx[static_cast<std::size_t>(i)] = i;
  return hafnian_rec(s, idx);
}

double rho_k(std::span<const complex> points, int ell) {
  const auto bundle = assemble_bundle(points, ell);
  const complex h = hafnian(bundle.S);
  if (std::abs(h.imag()) > 1e-9 * std::abs(h)) {
    throw ToleranceError("pairing sum is not real: imaginary part " + std::to_string(h.imag()));
  }
  return h.real() / (std::pow(kPi, bundle.k) * std::sqrt(bundle.detA));
}

Rho2Scalars rho2_scalars(int ell, double r) {
  const auto s = make_scalars<double>(r, ell);
  return {s.a, s.b, s.c, s.d, s.u, s.v, s.w, s.D};
}

bool uses_extended_precision(int ell, double r) { return ell > 30 || r < 0.1; }

double rho2_explicit(int ell, double r, unsigned precision_bits) {
  if (ell < 2) throw FormatError("explicit two-point formula needs ell >= 2");
  if (!(r > 0.0) || !std::isfinite(r)) throw DegenerateInput("explicit two-point formula needs r > 0");
  if (!uses_extended_precision(ell, r)) return rho2_formula<double>(r, ell, kPi);
  if (precision_bits < 53) throw FormatError("precision must be at least 53 bits");
  using detail::BigFloat;
  const auto bits = static_cast<mpfr_prec_t>(precision_bits);
  return rho2_formula(BigFloat(r, bits), ell, BigFloat::pi(bits)).to_double();
}

double sphere_density(int ell) { return 2.0 * ell / (4.0 * kPi); }

double rho_sphere(int ell, double theta, bool normalized, unsigned precision_bits) {
  if (!(theta > 0.0 && theta < kPi)) throw DegenerateInput("rho_sphere needs 0 < theta < pi");
  const double folded = theta > kPi / 2.0 ? kPi - theta : theta;
  const double r = std::tan(folded / 2.0);
  const double one_r2 = 1.0 + r * r;
  double value = rho2_explicit(ell, r, precision_bits) * one_r2 * one_r2 / 16.0;
  if (normalized) {
    const double rho1 = sphere_density(ell);
    value /= rho1 * rho1;
  }
  return value;
}

double rho_sphere_l2(double theta, bool normalized) {
  const double c2 = std::cos(theta) * std::cos(theta);
  const double shape = 27.0 * (1.0 - c2) / (2.0 * std::pow(3.0 + c2, 2.5));
  if (normalized) return shape;
  const double rho1 = 4.0 / (4.0 * kPi);
  return rho1 * rho1 * shape;
}

double hannay_g(double R) {
  const double x = R * R;
  if (x < 0.05) {
    // Taylor series in x = R^2; the next term is 4 x^13 / 173745.
    const double x2 = x * x;
    return x * (1.0 + x2 * (-2.0 / 9.0 +
                            x2 * (2.0 / 45.0 +
                                  x2 * (-4.0 / 525.0 + x2 * (2.0 / 1701.0 + x2 * (-2764.0 / 16372125.0))))));
  }
  // g = coth x (1 + x^2 / sinh^2 x) - 2 x / sinh^2 x, written with e^{-x}
  // so large x neither overflows nor loses the approach to 1.
  const double e2 = std::exp(-2.0 * x);
  const double one_minus = -std::expm1(-2.0 * x);
  const double coth = (1.0 + e2) / one_minus;
  const double inv_sinh = 2.0 * std::exp(-x) / one_minus;
  const double inv_sinh2 = inv_sinh * inv_sinh;
  return coth * (1.0 + x * x * inv_sinh2) - 2.0 * x * inv_sinh2;
}

GMaximum g_maximum() {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.5;
  double hi = 3.0;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double g1 = hannay_g(x1);
  double g2 = hannay_g(x2);
  while (hi - lo > 1e-10) {
    if (g1 < g2) {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + phi * (hi - lo);
      g2 = hannay_g(x2);
    } else {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - phi * (hi - lo);
      g1 = hannay_g(x1);
    }
  }
  const double R = 0.5 * (lo + hi);
  return {R, hannay_g(R)};
}

double limit_deviation(int ell, std::span<const double> R_grid, unsigned precision_bits) {
  if (ell < 10) throw FormatError("limit deviation is defined for ell >= 10");
  const double root_l = std::sqrt(static_cast<double>(ell));
  double worst = 0.0;
  for (double R : R_grid) {
    const double theta = 2.0 * std::atan(R / root_l);
    const double dev = std::abs(rho_sphere(ell, theta, true, precision_bits) - hannay_g(R));
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace multipoles
