// SPDX-License-Identifier: MIT
//
// Arbitrary-precision complex arithmetic built on Real.
//
// Products use fused multiply-add kernels (one rounding per component).
// sqrt and log take principal branches; pow with a real exponent is the
// principal power exp(y*log x).

#pragma once

#include <string>

#include "mera/real.hpp"

namespace mera {

struct Complex {
  Real re, im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)) {}
  Complex(long r) : re(r) {}
  Complex(int r) : re(r) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(double r) : re(r) {}
  Complex(double r, double i) : re(r), im(i) {}

  static Complex i() { return Complex(Real(0L), Real(1L)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }

  Complex operator-() const { return Complex(-re, -im); }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    *this = *this * o;
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    *this = *this / o;
    return *this;
  }
  Complex& operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
  }
  Complex& operator/=(const Real& s) {
    re /= s;
    im /= s;
    return *this;
  }
  Complex& operator*=(long s) {
    re *= s;
    im *= s;
    return *this;
  }
  Complex& operator/=(long s) {
    re /= s;
    im /= s;
    return *this;
  }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re + b.re, a.im + b.im);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re - b.re, a.im - b.im);
  }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return Complex(fmms(a.re, b.re, a.im, b.im), fmma(a.re, b.im, a.im, b.re));
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real n = fmma(b.re, b.re, b.im, b.im);
    return Complex(fmma(a.re, b.re, a.im, b.im) / n,
                   fmms(a.im, b.re, a.re, b.im) / n);
  }
  friend Complex operator*(const Complex& a, const Real& s) {
    return Complex(a.re * s, a.im * s);
  }
  friend Complex operator*(const Real& s, const Complex& a) { return a * s; }
  friend Complex operator/(const Complex& a, const Real& s) {
    return Complex(a.re / s, a.im / s);
  }
  friend Complex operator+(const Complex& a, const Real& s) {
    return Complex(a.re + s, a.im);
  }
  friend Complex operator+(const Real& s, const Complex& a) { return a + s; }
  friend Complex operator-(const Complex& a, const Real& s) {
    return Complex(a.re - s, a.im);
  }
  friend Complex operator-(const Real& s, const Complex& a) {
    return Complex(s - a.re, -a.im);
  }
  friend Complex operator*(const Complex& a, long s) {
    return Complex(a.re * s, a.im * s);
  }
  friend Complex operator*(long s, const Complex& a) { return a * s; }
  friend Complex operator/(const Complex& a, long s) {
    return Complex(a.re / s, a.im / s);
  }
  friend Complex operator+(const Complex& a, long s) {
    return Complex(a.re + s, a.im);
  }
  friend Complex operator+(long s, const Complex& a) { return a + s; }
  friend Complex operator-(const Complex& a, long s) {
    return Complex(a.re - s, a.im);
  }
  friend Complex operator-(long s, const Complex& a) {
    return Complex(s - a.re, -a.im);
  }
  friend Complex operator/(const Real& s, const Complex& b) {
    return Complex(s) / b;
  }
  friend Complex operator/(long s, const Complex& b) {
    return Complex(Real(s)) / b;
  }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }
};

inline Complex conj(const Complex& z) { return Complex(z.re, -z.im); }
inline Real norm(const Complex& z) { return fmma(z.re, z.re, z.im, z.im); }
inline Real abs(const Complex& z) { return hypot(z.re, z.im); }
inline Real arg(const Complex& z) { return atan2(z.im, z.re); }

/// r*exp(i*theta).
inline Complex polar(const Real& r, const Real& theta) {
  Real s = Real::raw(), c = Real::raw();
  mpfr_sin_cos(s.mp(), c.mp(), theta.mp(), MPFR_RNDN);
  return Complex(r * c, r * s);
}

/// Principal square root (branch cut on the negative real axis).
inline Complex sqrt(const Complex& z) {
  if (z.im.is_zero()) {
    if (z.re.sign() >= 0) return Complex(sqrt(z.re));
    return Complex(Real(0L), sqrt(-z.re));
  }
  Real r = abs(z);
  if (z.re.sign() >= 0) {
    Real u = sqrt(ldexp(r + z.re, -1));
    return Complex(u, ldexp(z.im / u, -1));
  }
  Real v = sqrt(ldexp(r - z.re, -1));
  if (z.im.is_negative()) v = -v;
  return Complex(ldexp(z.im / v, -1), v);
}

inline Complex exp(const Complex& z) {
  Real m = exp(z.re);
  return polar(m, z.im);
}

/// Principal logarithm: log|z| + i*arg(z), arg in (-pi, pi].
inline Complex log(const Complex& z) { return Complex(log(abs(z)), arg(z)); }

inline Complex sin(const Complex& z) {
  return Complex(sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im));
}
inline Complex cos(const Complex& z) {
  return Complex(cos(z.re) * cosh(z.im), -sin(z.re) * sinh(z.im));
}

inline Complex pow(const Complex& z, long n) {
  if (n == 0) return Complex(1L);
  long e = n < 0 ? -n : n;
  Complex base = z, acc(1L);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  if (n < 0) return 1L / acc;
  return acc;
}

/// Principal power z^a = exp(a*log z), a real.
inline Complex pow(const Complex& z, const Real& a) {
  if (z.is_zero()) return Complex(0L);
  return exp(Complex(a) * log(z));
}

inline std::string to_string(const Complex& z, int digits = 0) {
  return "(" + to_string(z.re, digits) + ", " + to_string(z.im, digits) + ")";
}

}  // namespace mera
