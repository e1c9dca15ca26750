// SPDX-License-Identifier: MIT
//
// Polynomials with complex multiprecision coefficients (lowest degree
// first) and root finding: double-precision companion-matrix seeds
// followed by Aberth simultaneous refinement at working precision.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <stdexcept>
#include <utility>
#include <vector>

#include "mera/complex.hpp"

namespace mera {

struct Poly {
  std::vector<Complex> c;  // c[k] multiplies z^k

  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(Complex v) { return Poly({std::move(v)}); }
  static Poly x() { return Poly({Complex(0L), Complex(1L)}); }

  /// Drop exactly-zero leading coefficients.
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }

  bool is_zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }
  const Complex& leading() const {
    if (c.empty()) throw std::invalid_argument("Poly: zero polynomial");
    return c.back();
  }

  Real max_abs_coeff() const {
    Real m(0L);
    for (const Complex& z : c) {
      Real v = abs(z);
      if (v > m) m = v;
    }
    return m;
  }

  Complex operator()(const Complex& z) const {
    Complex acc;
    for (size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
  }
  Complex operator()(const Real& x) const { return (*this)(Complex(x)); }

  /// Value and first derivative in one Horner pass.
  std::pair<Complex, Complex> eval_with_derivative(const Complex& z) const {
    Complex p, dp;
    for (size_t k = c.size(); k-- > 0;) {
      dp = dp * z + p;
      p = p * z + c[k];
    }
    return {p, dp};
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<Complex> d(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<long>(k);
    return Poly(std::move(d));
  }

  /// z^deg * p(1/conj(z)) conjugated: coefficients reversed and conjugated.
  Poly reciprocal_conj() const {
    std::vector<Complex> d(c.rbegin(), c.rend());
    for (Complex& z : d) z = conj(z);
    return Poly(std::move(d));
  }

  Poly monic() const {
    if (c.empty()) throw std::invalid_argument("Poly: zero polynomial");
    Poly r = *this;
    Complex lead = c.back();
    for (Complex& z : r.c) z /= lead;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Complex> r(std::max(a.c.size(), b.c.size()));
    for (size_t k = 0; k < r.size(); ++k) {
      if (k < a.c.size()) r[k] += a.c[k];
      if (k < b.c.size()) r[k] += b.c[k];
    }
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Complex> r(std::max(a.c.size(), b.c.size()));
    for (size_t k = 0; k < r.size(); ++k) {
      if (k < a.c.size()) r[k] += a.c[k];
      if (k < b.c.size()) r[k] -= b.c[k];
    }
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Complex> r(a.c.size() + b.c.size() - 1);
    for (size_t i = 0; i < a.c.size(); ++i)
      for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Complex& s) {
    Poly r = a;
    for (Complex& z : r.c) z *= s;
    r.trim();
    return r;
  }
  friend Poly operator*(const Complex& s, const Poly& a) { return a * s; }

  static Poly from_roots(const std::vector<Complex>& roots) {
    Poly p = constant(Complex(1L));
    for (const Complex& r : roots) p = p * Poly({-r, Complex(1L)});
    return p;
  }
};

namespace detail {

/// Polynomial part of q(z) * sum_k c_k z^(-k-1): the coefficient of z^l is
/// sum_{j > l} q_j c_{j-1-l}.  Needs c_0..c_{deg q - 1}.
inline Poly polynomial_part(const Poly& q, const std::vector<Complex>& c) {
  if (q.degree() < 1) return Poly();
  const long dq = q.degree();
  std::vector<Complex> p(dq);
  for (long l = 0; l < dq; ++l) {
    Complex s;
    for (long j = l + 1; j <= dq; ++j) s += q.c[j] * c[j - 1 - l];
    p[l] = s;
  }
  return Poly(std::move(p));
}

/// Scaled residual |p(r)| / (||p||_inf (1+|r|)^deg): the root-quality
/// measure used by the convergence contract.
inline Real root_residual(const Poly& p, const Complex& r, const Real& pnorm) {
  return abs(p(r)) / (pnorm * pow(1 + abs(r), p.degree()));
}

inline std::vector<Complex> companion_seeds(const Poly& p) {
  const long n = p.degree();
  // Scale to unit max coefficient before the double conversion.
  Real scale = p.max_abs_coeff();
  std::vector<std::complex<double>> cd(n + 1);
  for (long k = 0; k <= n; ++k)
    cd[k] = {(p.c[k].re / scale).to_double(), (p.c[k].im / scale).to_double()};
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (long i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (long i = 0; i < n; ++i) C(i, n - 1) = -cd[i] / cd[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, /*computeEigenvectors=*/false);
  std::vector<Complex> seeds(n);
  for (long i = 0; i < n; ++i) {
    std::complex<double> e = es.eigenvalues()(i);
    seeds[i] = Complex(e.real(), e.imag());
  }
  return seeds;
}

}  // namespace detail

/// All roots of p with multiplicity.  Guarantees
///   max_r |p(r)| / (||p|| (1+|r|)^deg)  <=  10 * convergence_tol.
inline std::vector<Complex> poly_roots(const Poly& p_in, const PrecisionContext& ctx = {}) {
  Poly p = p_in;
  p.trim();
  if (p.is_zero()) throw std::invalid_argument("poly_roots: zero polynomial");
  if (p.degree() < 1) throw std::invalid_argument("poly_roots: constant polynomial");

  // Deflate exact roots at the origin.
  std::vector<Complex> roots;
  size_t shift = 0;
  while (shift < p.c.size() - 1 && p.c[shift].is_zero()) ++shift;
  if (shift > 0) {
    roots.assign(shift, Complex(0L));
    p.c.erase(p.c.begin(), p.c.begin() + static_cast<long>(shift));
  }
  if (p.degree() == 0) return roots;

  std::vector<Complex> z = detail::companion_seeds(p);
  const long n = p.degree();
  // Separate exactly coincident seeds so Aberth repulsion can act.
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j)
      if (z[i] == z[j]) z[j] += Complex(two_pow(-40) * (1 + abs(z[i])), two_pow(-41));
  const Real pnorm = p.max_abs_coeff();
  const Real target = ctx.convergence_tol();  // 10x slack left for the contract

  for (int iter = 0; iter < 200; ++iter) {
    Real worst(0L);
    for (long i = 0; i < n; ++i) {
      auto [pv, dpv] = p.eval_with_derivative(z[i]);
      Real res = abs(pv) / (pnorm * pow(1 + abs(z[i]), n));
      if (res > worst) worst = res;
      if (res.is_zero()) continue;
      Complex newton = dpv.is_zero() ? Complex(0L) : pv / dpv;
      Complex sum;
      for (long j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex d = z[i] - z[j];
        if (d.is_zero()) continue;  // coincident iterates: plain Newton step
        sum += 1L / d;
      }
      Complex denom = 1L - newton * sum;
      Complex step = denom.is_zero() ? newton : newton / denom;
      z[i] -= step;
    }
    if (worst <= target) break;
  }
  // Enforce the residual contract (10x slack over the refinement
  // target) instead of returning silently useless iterates.  The
  // residual measure absorbs multiple roots, so only genuinely
  // unresolved inputs - e.g. a polynomial whose leading coefficient is
  // pure roundoff - land here.
  for (long i = 0; i < n; ++i)
    if (detail::root_residual(p, z[i], pnorm) > 10 * target)
      throw std::runtime_error(
          "poly_roots: refinement stalled above the residual target");
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

}  // namespace mera
