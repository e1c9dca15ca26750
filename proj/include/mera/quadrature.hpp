// SPDX-License-Identifier: MIT
//
// Gauss-Jacobi quadrature at working precision.
//
// Rules are generated from the monic three-term recurrence (orthonormal
// form) with Newton iteration on the degree-n polynomial from
// Chebyshev-angle seeds; weights come from the Christoffel function.
// Rules on [c,d] integrate against (t-c)^alpha (d-t)^beta dt.

#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "mera/real.hpp"

namespace mera {

struct QuadRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

namespace detail {

/// Recurrence coefficients for monic Jacobi polynomials w.r.t.
/// (1-x)^a (1+x)^b on [-1,1]:  p_{k+1} = (x - A_k) p_k - B_k p_{k-1},
/// with B_0 = mu_0 (total weight mass) by convention.
struct JacobiRecurrence {
  Real a, b;
  std::vector<Real> A, B;  // A[k], B[k] for k = 0..n
  std::vector<Real> sqrtB;

  JacobiRecurrence(Real a_, Real b_, long n) : a(std::move(a_)), b(std::move(b_)) {
    A.reserve(n + 1);
    B.reserve(n + 1);
    Real s = a + b;
    Real mu0 = pow(Real(2), s + 1) * gamma_fn(a + 1) * gamma_fn(b + 1) /
               gamma_fn(s + 2);
    for (long k = 0; k <= n; ++k) {
      if (k == 0) {
        A.push_back((b - a) / (s + 2));
        B.push_back(mu0);
      } else {
        Real two_k_s = 2 * k + s;
        // A_k = (b^2-a^2)/((2k+s)(2k+s+2)); guard the symmetric case where
        // the numerator vanishes with (near-)vanishing denominator factor.
        Real num = (b - a) * (b + a);
        A.push_back(num.is_zero() ? Real(0) : num / (two_k_s * (two_k_s + 2)));
        if (k == 1) {
          B.push_back(4 * (a + 1) * (b + 1) / ((s + 2) * (s + 2) * (s + 3)));
        } else {
          B.push_back(4 * k * (k + a) * (k + b) * (k + s) /
                      (two_k_s * two_k_s * (two_k_s * two_k_s - 1)));
        }
      }
    }
    sqrtB.reserve(B.size());
    for (const Real& v : B) sqrtB.push_back(sqrt(v));
  }

  /// Orthonormal values pvals[k] = phat_k(x), k = 0..n, plus the
  /// derivative of phat_n, in one recurrence pass.
  void eval_orthonormal(const Real& x, long n, std::vector<Real>& pvals,
                        Real& dpn) const {
    pvals.assign(n + 1, Real(0));
    Real pm1(0), dm1(0);
    Real p0 = 1 / sqrtB[0], d0(0);
    pvals[0] = p0;
    for (long k = 0; k < n; ++k) {
      const Real& sb = sqrtB[k + 1];
      Real p1 = ((x - A[k]) * p0 - (k > 0 ? sqrtB[k] * pm1 : Real(0))) / sb;
      Real d1 = ((x - A[k]) * d0 + p0 - (k > 0 ? sqrtB[k] * dm1 : Real(0))) / sb;
      pm1 = p0;
      dm1 = d0;
      p0 = p1;
      d0 = d1;
      pvals[k + 1] = p0;
    }
    dpn = d0;
  }
};

/// Double-precision Newton refinement of Jacobi nodes (seeding only).
inline double seed_newton(const std::vector<double>& A, const std::vector<double>& B,
                          long n, double x0) {
  double x = x0;
  for (int iter = 0; iter < 40; ++iter) {
    double pm1 = 0, dm1 = 0, p0 = 1, d0 = 0;
    for (long k = 0; k < n; ++k) {
      double p1 = (x - A[k]) * p0 - B[k] * pm1;
      double d1 = (x - A[k]) * d0 + p0 - B[k] * dm1;
      pm1 = p0;
      dm1 = d0;
      p0 = p1;
      d0 = d1;
      // Monic values scale like 4^-k on [-1,1]; rescale so the quotient
      // p/d survives in double for large n.
      double m = std::abs(p0);
      if (m != 0 && (m > 1e120 || m < 1e-120)) {
        pm1 /= m;
        dm1 /= m;
        p0 /= m;
        d0 /= m;
      }
    }
    double step = p0 / d0;
    x -= step;
    if (std::abs(step) < 1e-15 * (1 + std::abs(x))) break;
  }
  return x;
}

inline QuadRule jacobi_rule_standard(const Real& a, const Real& b, long n) {
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  // Chebyshev-Gauss closed form (the arcsine base weight): nodes
  // cos((2i+1) pi / 2n), uniform weights pi/n.  This is the rule behind
  // every plain-endpoint measure, so it must stay O(n).
  Real mhalf = Real(-1) / 2;
  if (a == mhalf && b == mhalf) {
    Real w = pi() / n;
    for (long i = 0; i < n; ++i) {
      rule.nodes[i] = cos(pi() * (2 * i + 1) / (2 * n));
      rule.weights[i] = w;
    }
    return rule;
  }

  JacobiRecurrence rec(a, b, n);
  // Double-precision seeds: monic recurrence + Newton from Chebyshev angles.
  std::vector<double> Ad(n), Bd(n);
  for (long k = 0; k < n; ++k) {
    Ad[k] = rec.A[k].to_double();
    Bd[k] = k == 0 ? 0.0 : rec.B[k].to_double();
  }
  std::vector<Real> pvals;
  Real dpn(0);
  const Real newton_tol = two_pow(-current_precision() + 6);
  for (long i = 0; i < n; ++i) {
    double theta = 3.14159265358979324 * (4 * i + 3) / (4 * n + 2);
    Real x(detail::seed_newton(Ad, Bd, n, std::cos(theta)));
    for (int iter = 0; iter < 80; ++iter) {
      rec.eval_orthonormal(x, n, pvals, dpn);
      Real step = pvals[n] / dpn;
      x -= step;
      if (abs(step) <= newton_tol * (1 + abs(x))) break;
    }
    rec.eval_orthonormal(x, n, pvals, dpn);
    Real chl(0);
    for (long k = 0; k < n; ++k) chl += pvals[k] * pvals[k];
    rule.nodes[i] = x;
    rule.weights[i] = 1 / chl;
  }
  // Sanity: nodes must be strictly decreasing in (-1,1).
  for (long i = 0; i < n; ++i) {
    if (!(rule.nodes[i] > Real(-1) && rule.nodes[i] < Real(1)) ||
        (i > 0 && !(rule.nodes[i] < rule.nodes[i - 1])))
      throw std::runtime_error("jacobi_quadrature: node iteration failed");
  }
  return rule;
}

}  // namespace detail

/// n-point rule for  integral_c^d f(t) (t-c)^alpha (d-t)^beta dt.
/// Nodes are returned in increasing order.
inline QuadRule jacobi_quadrature(const Real& c, const Real& d, const Real& alpha,
                                  const Real& beta, long n) {
  if (!(alpha > Real(-1)) || !(beta > Real(-1)))
    throw std::invalid_argument("jacobi_quadrature: exponents must exceed -1");
  if (n < 1) throw std::invalid_argument("jacobi_quadrature: need n >= 1");
  if (!(c < d)) throw std::invalid_argument("jacobi_quadrature: need c < d");

  // Cache standard-interval rules per (a, b, n, precision).  The interval
  // weight (t-c)^alpha (d-t)^beta maps to the Jacobi weight
  // (1-x)^beta (1+x)^alpha: the *left* interval exponent sits in the
  // Jacobi *b* slot.
  using Key = std::tuple<std::string, std::string, long, long>;
  thread_local std::map<Key, QuadRule> cache;
  Key key{to_string(beta), to_string(alpha), n, current_precision()};
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, detail::jacobi_rule_standard(beta, alpha, n)).first;
  const QuadRule& std_rule = it->second;

  Real half = (d - c) / 2;
  Real mid = (d + c) / 2;
  Real scale = pow(half, alpha + beta + 1);
  QuadRule out;
  out.nodes.resize(n);
  out.weights.resize(n);
  for (long i = 0; i < n; ++i) {
    // Standard nodes decrease; reverse so interval nodes increase.
    const Real& x = std_rule.nodes[n - 1 - i];
    out.nodes[i] = mid + half * x;
    out.weights[i] = scale * std_rule.weights[n - 1 - i];
  }
  return out;
}

}  // namespace mera
