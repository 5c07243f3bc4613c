#pragma once

// Minimal value-semantic wrapper over an MPFR number with an explicit
// precision in bits. Results take the larger precision of their operands.

#include <mpfr.h>

#include <algorithm>
#include <utility>

namespace multipoles::detail {

class BigFloat {
 public:
  BigFloat(double value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, value, MPFR_RNDN);
  }
  BigFloat(const BigFloat& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
  }
  BigFloat& operator=(BigFloat other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat pi(mpfr_prec_t bits) {
    BigFloat r(0.0, bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_add); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_sub); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_mul); }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return binary(a, b, mpfr_div); }

  friend BigFloat operator+(const BigFloat& a, double b) { return a + BigFloat(b, a.bits()); }
  friend BigFloat operator+(double a, const BigFloat& b) { return BigFloat(a, b.bits()) + b; }
  friend BigFloat operator-(const BigFloat& a, double b) { return a - BigFloat(b, a.bits()); }
  friend BigFloat operator-(double a, const BigFloat& b) { return BigFloat(a, b.bits()) - b; }
  friend BigFloat operator*(const BigFloat& a, double b) { return a * BigFloat(b, a.bits()); }
  friend BigFloat operator*(double a, const BigFloat& b) { return BigFloat(a, b.bits()) * b; }
  friend BigFloat operator/(const BigFloat& a, double b) { return a / BigFloat(b, a.bits()); }

  friend BigFloat operator-(const BigFloat& a) {
    BigFloat r(0.0, a.bits());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend BigFloat pow(const BigFloat& a, long n) {
    BigFloat r(0.0, a.bits());
    mpfr_pow_si(r.v_, a.v_, n, MPFR_RNDN);
    return r;
  }
  friend BigFloat sqrt(const BigFloat& a) {
    BigFloat r(0.0, a.bits());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

 private:
  template <class Op>
  static BigFloat binary(const BigFloat& a, const BigFloat& b, Op op) {
    BigFloat r(0.0, std::max(a.bits(), b.bits()));
    op(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

}  // namespace multipoles::detail
