// SPDX-License-Identifier: MIT
//
// Value-semantic arbitrary-precision real numbers over MPFR.
//
// A Real carries its own significand size; binary operations produce
// results at the thread's current working precision (see precision.hpp),
// rounded to nearest.  Copies preserve the source precision exactly, so
// values computed inside a PrecisionScope keep their accuracy when the
// scope ends.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

#include "mera/precision.hpp"

namespace mera {

class Real {
 public:
  Real() : Real(raw_tag{}) { mpfr_set_zero(v_, 1); }
  Real(long x) : Real(raw_tag{}) { mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(int x) : Real(static_cast<long>(x)) {}
  explicit Real(double x) : Real(raw_tag{}) { mpfr_set_d(v_, x, MPFR_RNDN); }
  explicit Real(const std::string& s) : Real(raw_tag{}) {
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("Real: cannot parse \"" + s + "\"");
  }

  Real(const Real& o) : engaged_(true) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept : engaged_(o.engaged_) {
    v_[0] = o.v_[0];
    o.engaged_ = false;
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      ensure();
      if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_))
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) {
      if (engaged_) mpfr_clear(v_);
      v_[0] = o.v_[0];
      engaged_ = o.engaged_;
      o.engaged_ = false;
    }
    return *this;
  }
  Real& operator=(long x) {
    ensure();
    mpfr_set_si(v_, x, MPFR_RNDN);
    return *this;
  }
  ~Real() {
    if (engaged_) mpfr_clear(v_);
  }

  /// Uninitialized value at the current working precision (internal use).
  static Real raw() { return Real(raw_tag{}); }

  mpfr_ptr mp() { return v_; }
  mpfr_srcptr mp() const { return v_; }

  long precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_negative() const { return mpfr_sgn(v_) < 0; }
  int sign() const { return mpfr_sgn(v_); }

  Real operator-() const {
    Real r = raw();
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator+=(long x) { mpfr_add_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator-=(long x) { mpfr_sub_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return *this; }

  friend Real operator+(const Real& a, const Real& b) { return bin(mpfr_add, a, b); }
  friend Real operator-(const Real& a, const Real& b) { return bin(mpfr_sub, a, b); }
  friend Real operator*(const Real& a, const Real& b) { return bin(mpfr_mul, a, b); }
  friend Real operator/(const Real& a, const Real& b) { return bin(mpfr_div, a, b); }

  friend Real operator+(const Real& a, long b) { return bin_si(mpfr_add_si, a, b); }
  friend Real operator-(const Real& a, long b) { return bin_si(mpfr_sub_si, a, b); }
  friend Real operator*(const Real& a, long b) { return bin_si(mpfr_mul_si, a, b); }
  friend Real operator/(const Real& a, long b) { return bin_si(mpfr_div_si, a, b); }
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator-(long a, const Real& b) {
    Real r = raw();
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(long a, const Real& b) {
    Real r = raw();
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(const Real& a, double b) { return bin_d(mpfr_add_d, a, b); }
  friend Real operator-(const Real& a, double b) { return bin_d(mpfr_sub_d, a, b); }
  friend Real operator*(const Real& a, double b) { return bin_d(mpfr_mul_d, a, b); }
  friend Real operator/(const Real& a, double b) { return bin_d(mpfr_div_d, a, b); }
  friend Real operator+(double a, const Real& b) { return b + a; }
  friend Real operator-(double a, const Real& b) {
    Real r = raw();
    mpfr_d_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(double a, const Real& b) { return b * a; }
  friend Real operator/(double a, const Real& b) {
    Real r = raw();
    mpfr_d_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(const Real& a, int b) { return a + static_cast<long>(b); }
  friend Real operator-(const Real& a, int b) { return a - static_cast<long>(b); }
  friend Real operator*(const Real& a, int b) { return a * static_cast<long>(b); }
  friend Real operator/(const Real& a, int b) { return a / static_cast<long>(b); }
  friend Real operator+(int a, const Real& b) { return static_cast<long>(a) + b; }
  friend Real operator-(int a, const Real& b) { return static_cast<long>(a) - b; }
  friend Real operator*(int a, const Real& b) { return static_cast<long>(a) * b; }
  friend Real operator/(int a, const Real& b) { return static_cast<long>(a) / b; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

  friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend bool operator!=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) != 0; }
  friend bool operator<(const Real& a, int b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const Real& a, int b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const Real& a, int b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const Real& a, int b) { return mpfr_cmp_si(a.v_, b) >= 0; }
  friend bool operator==(const Real& a, int b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend bool operator!=(const Real& a, int b) { return mpfr_cmp_si(a.v_, b) != 0; }
  friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
  friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
  friend bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
  friend bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }

 private:
  struct raw_tag {};
  explicit Real(raw_tag) : engaged_(true) { mpfr_init2(v_, current_precision()); }

  void ensure() {
    if (!engaged_) {
      mpfr_init2(v_, current_precision());
      engaged_ = true;
    }
  }

  using mpfr_bin = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  using mpfr_bin_si = int (*)(mpfr_ptr, mpfr_srcptr, long, mpfr_rnd_t);
  using mpfr_bin_d = int (*)(mpfr_ptr, mpfr_srcptr, double, mpfr_rnd_t);
  static Real bin(mpfr_bin f, const Real& a, const Real& b) {
    Real r = raw();
    f(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  static Real bin_si(mpfr_bin_si f, const Real& a, long b) {
    Real r = raw();
    f(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  static Real bin_d(mpfr_bin_d f, const Real& a, double b) {
    Real r = raw();
    f(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
  bool engaged_;
};

namespace detail {
using mpfr_unary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
inline Real un(mpfr_unary f, const Real& a) {
  Real r = Real::raw();
  f(r.mp(), a.mp(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline Real abs(const Real& a) { return detail::un(mpfr_abs, a); }
inline Real sqrt(const Real& a) { return detail::un(mpfr_sqrt, a); }
inline Real cbrt(const Real& a) { return detail::un(mpfr_cbrt, a); }
inline Real exp(const Real& a) { return detail::un(mpfr_exp, a); }
inline Real expm1(const Real& a) { return detail::un(mpfr_expm1, a); }
inline Real log(const Real& a) { return detail::un(mpfr_log, a); }
inline Real log1p(const Real& a) { return detail::un(mpfr_log1p, a); }
inline Real sin(const Real& a) { return detail::un(mpfr_sin, a); }
inline Real cos(const Real& a) { return detail::un(mpfr_cos, a); }
inline Real tan(const Real& a) { return detail::un(mpfr_tan, a); }
inline Real asin(const Real& a) { return detail::un(mpfr_asin, a); }
inline Real acos(const Real& a) { return detail::un(mpfr_acos, a); }
inline Real atan(const Real& a) { return detail::un(mpfr_atan, a); }
inline Real sinh(const Real& a) { return detail::un(mpfr_sinh, a); }
inline Real cosh(const Real& a) { return detail::un(mpfr_cosh, a); }
inline Real tanh(const Real& a) { return detail::un(mpfr_tanh, a); }
inline Real floor(const Real& a) { Real r = Real::raw(); mpfr_floor(r.mp(), a.mp()); return r; }
inline Real ceil(const Real& a) { Real r = Real::raw(); mpfr_ceil(r.mp(), a.mp()); return r; }
inline Real gamma_fn(const Real& a) { return detail::un(mpfr_gamma, a); }

inline Real atan2(const Real& y, const Real& x) {
  Real r = Real::raw();
  mpfr_atan2(r.mp(), y.mp(), x.mp(), MPFR_RNDN);
  return r;
}
inline Real hypot(const Real& x, const Real& y) {
  Real r = Real::raw();
  mpfr_hypot(r.mp(), x.mp(), y.mp(), MPFR_RNDN);
  return r;
}
inline Real agm(const Real& x, const Real& y) {
  Real r = Real::raw();
  mpfr_agm(r.mp(), x.mp(), y.mp(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, const Real& y) {
  Real r = Real::raw();
  mpfr_pow(r.mp(), x.mp(), y.mp(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& x, long n) {
  Real r = Real::raw();
  mpfr_pow_si(r.mp(), x.mp(), n, MPFR_RNDN);
  return r;
}

/// a*b + c*d and a*b - c*d in one rounding (the complex-product kernels).
inline Real fmma(const Real& a, const Real& b, const Real& c, const Real& d) {
  Real r = Real::raw();
  mpfr_fmma(r.mp(), a.mp(), b.mp(), c.mp(), d.mp(), MPFR_RNDN);
  return r;
}
inline Real fmms(const Real& a, const Real& b, const Real& c, const Real& d) {
  Real r = Real::raw();
  mpfr_fmms(r.mp(), a.mp(), b.mp(), c.mp(), d.mp(), MPFR_RNDN);
  return r;
}

/// 2^e as a Real (exact).
inline Real two_pow(long e) {
  Real r = Real::raw();
  mpfr_set_ui_2exp(r.mp(), 1, e, MPFR_RNDN);
  return r;
}
/// x * 2^e (exact scaling).
inline Real ldexp(const Real& x, long e) {
  Real r = Real::raw();
  mpfr_mul_2si(r.mp(), x.mp(), e, MPFR_RNDN);
  return r;
}

inline Real pi() {
  Real r = Real::raw();
  mpfr_const_pi(r.mp(), MPFR_RNDN);
  return r;
}

inline const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }
inline const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }

/// Digits needed so that print -> parse is the identity at precision `bits`.
inline int roundtrip_digits(long bits) {
  return static_cast<int>(static_cast<double>(bits) * 0.30103) + 4;
}

/// Decimal string with enough digits to round-trip at the value's precision
/// (or exactly `digits` significant digits when digits > 0).
inline std::string to_string(const Real& x, int digits = 0) {
  if (digits <= 0) digits = roundtrip_digits(x.precision());
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%.*Re", digits - 1, x.mp()) < 0)
    throw std::runtime_error("Real: formatting failed");
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

/// Settings shared by every numerical routine: the working significand size
/// and the scale-free convergence threshold derived from it.
struct PrecisionContext {
  long mantissa_bits = 256;

  PrecisionContext() = default;
  explicit PrecisionContext(long bits) : mantissa_bits(bits < 53 ? 53 : bits) {}

  /// 2^(-mantissa_bits/2): iterative routines stop when scaled residuals
  /// fall below this threshold.
  Real convergence_tol() const { return two_pow(-mantissa_bits / 2); }
};

}  // namespace mera
