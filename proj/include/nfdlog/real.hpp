#pragma once

#include <mpfr.h>

#include <algorithm>

#include <string>
#include <utility>

#include "nfdlog/arith.hpp"

namespace nfdlog {

/// Arbitrary-precision binary floating point (MPFR), precision fixed per value.
/// Binary operations produce the larger of the operand precisions.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
  Real(const Int& x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  /// Same value rounded to a new precision.
  Real with_precision(mpfr_prec_t prec) const {
    Real r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits = 20) const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

#define NFDLOG_REAL_BINOP(op, fn)                                             \
  friend Real operator op(const Real& a, const Real& b) {                     \
    Real r(std::max(a.precision(), b.precision()));                            \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                           \
    return r;                                                                  \
  }                                                                            \
  Real& operator op##=(const Real& b) { return *this = *this op b; }
  NFDLOG_REAL_BINOP(+, mpfr_add)
  NFDLOG_REAL_BINOP(-, mpfr_sub)
  NFDLOG_REAL_BINOP(*, mpfr_mul)
  NFDLOG_REAL_BINOP(/, mpfr_div)
#undef NFDLOG_REAL_BINOP

  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }

  friend Real abs(const Real& a) {
    Real r(a.precision());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real sqrt(const Real& a) {
    Real r(a.precision());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real log(const Real& a) {
    Real r(a.precision());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real hypot(const Real& a, const Real& b) {
    Real r(std::max(a.precision(), b.precision()));
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  /// 2^e at the given precision.
  static Real exp2(long e, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

struct Complex {
  Real re, im;

  explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t precision() const { return re.precision(); }
  Real abs() const { return hypot(re, im); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
};

}  // namespace nfdlog
