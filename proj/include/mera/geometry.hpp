// SPDX-License-Identifier: MIT
//
// Conformal geometry of a segment [c,d] in the unit disk.
//
// Core objects, all tied to the domain D = Cbar \ [c,d]:
//
//   w(z)      = sqrt((z-c)(z-d)),  branch with w(z)/z -> 1 at infinity;
//   psi(z)    = (d-c) / (2z-(c+d)+2w(z)),  the conformal map D -> unit
//               disk with psi(infinity)=0; on the segment the two
//               boundary values satisfy psi+ psi- = 1;
//   S~(z)     = sqrt((1-cz)(1-dz)),  S~(0)=1, cut on the reflected
//               segment [c,d]* = { 1/t : t in [c,d] };
//   Phi(z)    = exp( T^2 * int_1^z dt / (w S~) ),  the conformal map of
//               the ring between [c,d] and the unit circle onto the
//               annulus  rho < |tau| < 1,  Phi(1) = 1;
//   T, rho    = the normalization making |Phi|=1 on the unit circle, and
//               the inner radius |Phi| takes on the segment;
//   omega_G   = the Green equilibrium measure of the segment relative to
//               the disk: d omega_G = T^2 dt / (pi |w+| S~).
//
// On top of the maps the header provides Szego functions of weights on
// the segment (series route via Chebyshev log-coefficients, plus closed
// forms for polynomial, endpoint and interior-zero factors), the
// Blaschke-type products r_k, and Szego functions of an annulus.

#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mera/complex.hpp"
#include "mera/errors.hpp"
#include "mera/fft.hpp"
#include "mera/poly.hpp"
#include "mera/quadrature.hpp"

namespace mera {

/// Boundary-value selector for points on the open segment (c,d): `plus`
/// is the limit from the upper half-plane, `minus` from the lower.
enum class Side { off, plus, minus };

struct MapValues {
  Complex w;       // sqrt((z-c)(z-d)), w(z)/z -> 1
  Complex psi;     // exterior-to-disk map, psi(infinity) = 0
  Complex stilde;  // sqrt((1-cz)(1-dz)), value 1 at z = 0
};

namespace geo {

inline void check_interval(const Real& c, const Real& d) {
  if (!(c < d)) throw std::invalid_argument("geometry: require c < d");
}

}  // namespace geo

/// w, psi, S~ at a point z off the segment, or the one-sided boundary
/// values on the open segment when a side is selected.  Throws
/// std::domain_error for z on (c,d) with side `off`.  On the reflected
/// segment [c,d]* (the cut of S~) the returned S~ is the limit from the
/// upper half-plane; w and psi are unaffected there.
inline MapValues map_values(const Real& c, const Real& d, const Complex& z,
                            Side side = Side::off) {
  geo::check_interval(c, d);
  MapValues mv;
  const bool real_z = z.im.is_zero();
  const bool at_end = real_z && (z.re == c || z.re == d);
  const bool interior = real_z && !at_end && z.re > c && z.re < d;
  if (interior && side == Side::off)
    throw std::domain_error("map_values: point on the open segment needs a side");

  if (at_end) {
    mv.w = Complex(0L);
  } else if (interior) {
    Real mag = sqrt((z.re - c) * (d - z.re));
    mv.w = side == Side::plus ? Complex(Real(0L), mag) : Complex(Real(0L), -mag);
  } else {
    // Branch-safe: the ratio (z-d)/(z-c) stays off the negative real axis
    // for every z off the segment, so the principal square root has its
    // cut exactly on [c,d].
    mv.w = (z - c) * sqrt((z - d) / (z - c));
  }
  // psi = (2z-(c+d)-2w)/(d-c) rewritten with the numerator rationalized;
  // this form has no large-z cancellation and its denominator never
  // vanishes on the correct branch.
  mv.psi = (d - c) / (2 * z - (c + d) + 2 * mv.w);
  // Product of principal roots: each factor's cut contributes only where
  // 1-cz or 1-dz is negative real, which is exactly the reflected segment.
  mv.stilde = sqrt(1 - c * z) * sqrt(1 - d * z);
  // Real z lies on the open cut of S~ exactly when one factor is negative.
  // When it is 1-dz, the principal product is the lower limit (z -> 1-dz
  // flips half-planes for d > 0); flip it so the whole cut carries the
  // upper limit.  When both factors are negative the jumps cancel and the
  // product is already the analytic continuation -- leave it alone.
  if (real_z && (1 - d * z.re).sign() < 0 && (1 - c * z.re).sign() > 0)
    mv.stilde = -mv.stilde;
  return mv;
}

/// Derivative of the disk map: psi'(z) = -psi(z)/w(z).  Undefined at the
/// segment endpoints (w = 0).
inline Complex map_derivative(const Real& c, const Real& d, const Complex& z,
                              Side side = Side::off) {
  MapValues mv = map_values(c, d, z, side);
  if (mv.w.is_zero())
    throw std::domain_error("map_derivative: derivative blows up at an endpoint");
  return -mv.psi / mv.w;
}

/// Condenser data of ([c,d], unit circle) plus segment-map extrema.
struct CondenserGeometry {
  Real c, d;
  Real ell;        // 4/(d-c), the reciprocal of lim z*psi(z)
  bool in_disk{};  // segment strictly inside the unit disk

  // Valid only when in_disk (the ring degenerates otherwise):
  Real tau;             // normalization T > 0 of the ring map
  Real rho;             // inner radius of the ring image, in (0,1)
  QuadRule green;       // rule integrating against the Green equilibrium measure
  Real green_mass_dev;  // |sum of green weights - 1|
  Real rho_phi_dev;     // max relative deviation of |Phi+| from rho (mid-segment)
  Real s0, s1;          // max over the unit circle of |psi| and |psi'|
  long grid_n{};
};

namespace geo {

/// Doubling Gauss-Jacobi evaluation of  int_a^b f(t)(t-a)^alpha(b-t)^beta dt
/// until two consecutive dyadic rules agree to tol (scale-free).
template <class F>
Complex quad_doubling(F&& f, const Real& a, const Real& b, const Real& alpha,
                      const Real& beta, const Real& tol, long n0, long cap,
                      const char* what) {
  Complex prev;
  Real delta(0);
  bool have = false;
  for (long n = n0; n <= cap; n *= 2) {
    QuadRule rule = jacobi_quadrature(a, b, alpha, beta, n);
    Complex s(0L);
    for (long i = 0; i < n; ++i) s += rule.weights[i] * f(rule.nodes[i]);
    if (have) {
      delta = abs(s - prev) / (1 + abs(s));
      if (delta <= tol) return s;
    }
    prev = s;
    have = true;
  }
  throw AccuracyError(std::string(what) + ": rule doubling did not stabilize",
                      {prev}, delta);
}

/// Doubling Gauss-Legendre integral of f along the straight segment [A,B].
template <class F>
Complex segment_integral(F&& f, const Complex& A, const Complex& B, const Real& tol,
                         long cap, const char* what) {
  if (A == B) return Complex(0L);
  const Complex dz = B - A;
  Complex prev;
  Real delta(0);
  bool have = false;
  for (long n = 16; n <= cap; n *= 2) {
    QuadRule rule = jacobi_quadrature(Real(0L), Real(1L), Real(0L), Real(0L), n);
    Complex s(0L);
    for (long i = 0; i < n; ++i) s += rule.weights[i] * f(A + rule.nodes[i] * dz);
    s *= dz;
    if (have) {
      delta = abs(s - prev) / (1 + abs(s));
      if (delta <= tol) return s;
    }
    prev = s;
    have = true;
  }
  throw AccuracyError(std::string(what) + ": rule doubling did not stabilize",
                      {prev}, delta);
}

}  // namespace geo

/// The ring map Phi at z (off both segments), or its one-sided boundary
/// values on the open segment.  Path integral of T^2/(w S~) from 1 routed
/// through the vertical waypoint +-i(1+|z|): both legs stay clear of the
/// segment and of its reflection for every admissible target, including
/// targets hugging the real axis (where a straight chord would graze a
/// branch point).  For z on the open reflected segment the result is the
/// limit from the chosen half-plane.  Targets at the four branch points
/// c, d, 1/c, 1/d are not supported.
inline Complex condenser_map(const CondenserGeometry& g, const Complex& z,
                             Side side = Side::off,
                             const PrecisionContext& ctx = {}) {
  if (!g.in_disk)
    throw std::logic_error("condenser_map: segment not strictly inside the disk");
  if (side != Side::off) {
    if (!z.im.is_zero() || !(z.re > g.c && z.re < g.d))
      throw std::domain_error("condenser_map: side given but point not inside (c,d)");
  } else if (z.im.is_zero() && z.re > g.c && z.re < g.d) {
    throw std::domain_error("condenser_map: point on the open segment needs a side");
  }
  const Complex one(1L);
  if (side == Side::off && z == one) return one;

  const Real tol = ctx.convergence_tol();
  auto f = [&](const Complex& zeta) {
    MapValues mv = map_values(g.c, g.d, zeta, Side::off);
    return 1 / (mv.w * mv.stilde);
  };
  bool lower = side == Side::minus || z.im.sign() < 0;
  Real h = 1 + abs(z);
  Complex way(Real(0L), lower ? -h : h);
  Complex integral =
      geo::segment_integral(f, one, way, tol, 4096, "condenser_map") +
      geo::segment_integral(f, way, z, tol, 4096, "condenser_map");
  return exp(g.tau * g.tau * integral);
}

/// Green equilibrium mass of [t,d]:  omega_G([t,d]) in [0,1].
inline Real green_cdf(const CondenserGeometry& g, const Real& t,
                      const PrecisionContext& ctx = {}) {
  if (!g.in_disk)
    throw std::logic_error("green_cdf: segment not strictly inside the disk");
  if (t <= g.c) return Real(1L);
  if (t >= g.d) return Real(0L);
  const Real tol = ctx.convergence_tol();
  Real tt = g.tau * g.tau;
  auto f = [&](const Real& s) {
    Real st = sqrt((1 - g.c * s) * (1 - g.d * s));
    return Complex(tt / (pi() * sqrt(s - g.c) * st));
  };
  Complex v = geo::quad_doubling(f, t, g.d, Real(0L), Real(-1L) / 2, tol, 32, 8192,
                                 "green_cdf");
  return v.re;
}

/// Integral of f against the Green equilibrium measure, with optional
/// interior breakpoints where f is only piecewise smooth.
inline Complex green_integrate(const CondenserGeometry& g,
                               const std::function<Complex(const Real&)>& f,
                               std::vector<Real> breakpoints = {},
                               const PrecisionContext& ctx = {}) {
  if (!g.in_disk)
    throw std::logic_error("green_integrate: segment not strictly inside the disk");
  const Real tol = ctx.convergence_tol();
  Real tt = g.tau * g.tau;

  std::vector<Real> cuts{g.c};
  std::sort(breakpoints.begin(), breakpoints.end());
  for (const Real& b : breakpoints)
    if (b > g.c && b < g.d && b != cuts.back()) cuts.push_back(b);
  cuts.push_back(g.d);

  const Real mhalf = Real(-1L) / 2;
  Complex total(0L);
  for (size_t p = 0; p + 1 < cuts.size(); ++p) {
    const Real& a = cuts[p];
    const Real& b = cuts[p + 1];
    const bool left_end = a == g.c, right_end = b == g.d;
    auto piece = [&](const Real& t) {
      Real st = sqrt((1 - g.c * t) * (1 - g.d * t));
      Complex v = f(t) * (tt / (pi() * st));
      if (!left_end) v /= sqrt(t - g.c);
      if (!right_end) v /= sqrt(g.d - t);
      return v;
    };
    total += geo::quad_doubling(piece, a, b, left_end ? mhalf : Real(0L),
                                right_end ? mhalf : Real(0L), tol, 32, 16384,
                                "green_integrate");
  }
  return total;
}

/// int log|t-x| d omega_G(t) for x on [c,d], via the constancy of the
/// Green equilibrium potential:  the integral equals
/// int log|1-xt| d omega_G(t) + log rho,  which has a smooth integrand.
inline Real green_log_distance(const CondenserGeometry& g, const Real& x,
                               const PrecisionContext& ctx = {}) {
  if (!(x >= g.c && x <= g.d))
    throw std::domain_error("green_log_distance: point must lie on the segment");
  Complex smooth = green_integrate(
      g, [&](const Real& t) { return Complex(log(1 - x * t)); }, {}, ctx);
  return smooth.re + log(g.rho);
}

/// Geometric mean of |f| against the Green equilibrium measure:
/// exp( int log|f| d omega_G ).
inline Real green_geometric_mean(
    const CondenserGeometry& g, const std::function<Complex(const Real&)>& f,
    std::vector<Real> breakpoints = {}, const PrecisionContext& ctx = {}) {
  Complex lg = green_integrate(
      g, [&](const Real& t) { return Complex(log(abs(f(t)))); },
      std::move(breakpoints), ctx);
  return exp(lg.re);
}

/// Builds the condenser data.  grid_n (>= 16) sizes the stored Green rule.
/// For segments not strictly inside the disk only ell is meaningful and
/// in_disk is false; no error is raised.
inline CondenserGeometry build_geometry(const Real& c, const Real& d,
                                        long grid_n = 128,
                                        const PrecisionContext& ctx = {}) {
  geo::check_interval(c, d);
  if (grid_n < 16)
    throw std::invalid_argument("build_geometry: need grid_n >= 16");
  CondenserGeometry g;
  g.c = c;
  g.d = d;
  g.ell = 4 / (d - c);
  g.grid_n = grid_n;
  g.in_disk = c > Real(-1L) && d < Real(1L);
  if (!g.in_disk) return g;

  const Real tol = ctx.convergence_tol();
  const Real mhalf = Real(-1L) / 2;

  // T^{-2} = (2/pi) * int_0^1 dx / sqrt((1-x^2)((1-cd)^2-(d-c)^2 x^2)),
  // the (1-x)^{-1/2} endpoint factor absorbed into the rule.
  {
    Real A = (1 - c * d) * (1 - c * d);
    Real B = (d - c) * (d - c);
    auto f = [&](const Real& x) {
      return Complex(1 / sqrt((1 + x) * (A - B * x * x)));
    };
    Complex I = geo::quad_doubling(f, Real(0L), Real(1L), Real(0L), mhalf, tol, 32,
                                   8192, "build_geometry[T]");
    g.tau = sqrt(pi() / (2 * I.re));
  }

  // rho = exp(-T^2 * int_d^1 ds/(w S~)), the (s-d)^{-1/2} factor absorbed.
  {
    auto f = [&](const Real& s) {
      Real st = sqrt((1 - c * s) * (1 - d * s));
      return Complex(1 / (sqrt(s - c) * st));
    };
    Complex I = geo::quad_doubling(f, d, Real(1L), mhalf, Real(0L), tol, 32, 8192,
                                   "build_geometry[rho]");
    g.rho = exp(-g.tau * g.tau * I.re);
  }

  // Green rule: arcsine nodes, weights T^2 jw_i / (pi S~(t_i)).
  {
    QuadRule base = jacobi_quadrature(c, d, mhalf, mhalf, grid_n);
    g.green.nodes = base.nodes;
    g.green.weights.resize(grid_n);
    Real tt = g.tau * g.tau;
    Real mass(0L);
    for (long i = 0; i < grid_n; ++i) {
      const Real& t = base.nodes[i];
      Real st = sqrt((1 - c * t) * (1 - d * t));
      g.green.weights[i] = tt * base.weights[i] / (pi() * st);
      mass += g.green.weights[i];
    }
    g.green_mass_dev = abs(mass - 1);
  }

  // Extrema of |psi| and |psi'| over the unit circle: dense scan plus
  // golden-section refinement (the maps are conjugate-symmetric, so the
  // upper semicircle suffices).
  {
    auto mags = [&](const Real& theta) {
      MapValues mv = map_values(c, d, polar(Real(1L), theta), Side::off);
      Real m0 = abs(mv.psi);
      return std::pair<Real, Real>(m0, m0 / abs(mv.w));
    };
    const long scan = 4096;
    Real best0(-1), best1(-1), arg0(0L), arg1(0L);
    for (long j = 0; j <= scan; ++j) {
      Real theta = pi() * j / scan;
      auto [m0, m1] = mags(theta);
      if (m0 > best0) { best0 = m0; arg0 = theta; }
      if (m1 > best1) { best1 = m1; arg1 = theta; }
    }
    Real step = pi() / scan;
    auto refine = [&](const Real& center, bool deriv) {
      Real lo = max(Real(0L), center - step), hi = min(pi(), center + step);
      Real gr = (sqrt(Real(5L)) - 1) / 2;
      Real x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
      auto val = [&](const Real& th) {
        auto [m0, m1] = mags(th);
        return deriv ? m1 : m0;
      };
      Real f1 = val(x1), f2 = val(x2);
      for (int it = 0; it < 120 && hi - lo > tol; ++it) {
        if (f1 < f2) {
          lo = x1; x1 = x2; f1 = f2;
          x2 = lo + gr * (hi - lo); f2 = val(x2);
        } else {
          hi = x2; x2 = x1; f2 = f1;
          x1 = hi - gr * (hi - lo); f1 = val(x1);
        }
      }
      return max(f1, f2);
    };
    g.s0 = max(best0, refine(arg0, false));
    g.s1 = max(best1, refine(arg1, true));
  }

  // Consistency of the two routes to rho: |Phi+| at mid-segment samples.
  {
    Real dev(0L);
    for (int j = 1; j <= 5; ++j) {
      Real t = c + (d - c) * j / 6;
      Complex phi = condenser_map(g, Complex(t), Side::plus, ctx);
      dev = max(dev, abs(abs(phi) - g.rho) / g.rho);
    }
    g.rho_phi_dev = dev;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Szego functions of weights on the segment.
//
// For a nonvanishing weight h on [c,d] the Szego function is analytic and
// nonvanishing off the segment, tends to 1 at infinity, and satisfies
//   G_h * S_h+(t) * S_h-(t) = h(t)  on the segment,
// where G_h is the geometric mean of h against the arcsine distribution.
// The series route expands a continuous branch of log h in Chebyshev
// polynomials: log h(t(theta)) = sum_k a_k cos(k theta); then
//   log G_h   = a_0,
//   log S_h   = (1/2) sum_{k>=1} a_k psi^k,
//   S_h+/S_h- = exp(-i sum_{k>=1} a_k sin(k theta))   (boundary ratio).
// ---------------------------------------------------------------------------

class SzegoFunction {
 public:
  using Sampler = std::function<Complex(const Real&)>;

  /// Samples h at Chebyshev angles (ordered from the d-end to the c-end),
  /// continues the log branch along that ordering, and reads the
  /// coefficients off an FFT of the even extension.  Doubles the grid
  /// until the branch steps stay below pi/2 and the coefficient tail is
  /// negligible; throws AccuracyError if the cap is reached and
  /// std::invalid_argument if a sample vanishes.
  SzegoFunction(Real c, Real d, const Sampler& h, long min_samples = 4096,
                const PrecisionContext& ctx = {})
      : c_(std::move(c)), d_(std::move(d)) {
    geo::check_interval(c_, d_);
    const Real tol = ctx.convergence_tol();
    const Real drop = two_pow(-ctx.mantissa_bits);
    long M = 256;
    while (M < min_samples) M *= 2;
    const long cap = 1L << 17;
    Real mid = (c_ + d_) / 2, half = (d_ - c_) / 2;
    Real last_jump(0L), last_tail(0L);
    for (; M <= cap; M *= 2) {
      // Sample and continue the branch of log h.
      std::vector<Complex> logs(M);
      Real prev_arg(0L);
      Real max_jump(0L);
      bool jump_ok = true;
      for (long j = 0; j < M && jump_ok; ++j) {
        Real theta = pi() * (2 * j + 1) / (2 * M);
        Complex v = h(mid + half * cos(theta));
        if (v.is_zero())
          throw std::invalid_argument("SzegoFunction: weight vanishes at a sample");
        Real a = arg(v);
        if (j > 0) {
          Real k = floor((prev_arg - a) / (2 * pi()) + Real(1L) / 2);
          a += 2 * pi() * k;
          max_jump = max(max_jump, abs(a - prev_arg));
          if (!(max_jump < pi() / 2)) jump_ok = false;
        }
        logs[j] = Complex(log(abs(v)), a);
        prev_arg = a;
      }
      last_jump = max_jump;
      if (!jump_ok) continue;

      // Even extension and FFT: samples at angles (j+1/2)pi/M, j=0..2M-1.
      std::vector<Complex> v(2 * M);
      for (long j = 0; j < M; ++j) {
        v[j] = logs[j];
        v[2 * M - 1 - j] = logs[j];
      }
      std::vector<Complex> F = fft_forward(std::move(v));
      std::vector<Complex> coef(M);
      coef[0] = F[0] / (2 * M);
      for (long k = 1; k < M; ++k)
        coef[k] = polar(Real(1L), -pi() * k / (2 * M)) * F[k] / M;

      Real scale(1L);
      for (long k = 0; k < M; ++k) scale = max(scale, abs(coef[k]));
      Real tail(0L);
      for (long k = M / 2; k < M; ++k) tail = max(tail, abs(coef[k]));
      last_tail = tail / scale;
      if (tail <= tol * scale) {
        long K = M / 2;
        while (K > 0 && abs(coef[K]) <= drop * scale) --K;
        a_.assign(coef.begin(), coef.begin() + K + 1);
        return;
      }
    }
    throw AccuracyError(
        "SzegoFunction: sampling cap reached before branch/tail stabilized",
        {Complex(last_jump), Complex(last_tail)}, last_tail);
  }

  const Real& left() const { return c_; }
  const Real& right() const { return d_; }
  const std::vector<Complex>& coefficients() const { return a_; }

  /// log of the geometric mean against the arcsine distribution.
  const Complex& log_gmean() const { return a_[0]; }
  Complex gmean() const { return exp(a_[0]); }

  /// S_h(z) for z off the segment.
  Complex value(const Complex& z) const {
    Complex psi = map_values(c_, d_, z, Side::off).psi;
    return exp(half_series(psi));
  }

  /// One-sided boundary value S_h^+ or S_h^- at t on the segment.
  Complex boundary(const Real& t, Side side) const {
    return exp(half_series(boundary_psi(t, side)));
  }

  /// Boundary ratio S_h^{side} / S_h^{other side} at t; the two sides are
  /// reciprocal and unimodular whenever h is positive.
  Complex boundary_ratio(const Real& t, Side side) const {
    if (side == Side::off)
      throw std::invalid_argument("SzegoFunction: ratio needs a side");
    Real theta = angle_of(t);
    Real cth = cos(theta);
    // sum a_k sin(k theta) via the sine recurrence.
    Complex sum(0L);
    Real s_prev(0L), s_cur = sin(theta);
    for (size_t k = 1; k < a_.size(); ++k) {
      sum += a_[k] * s_cur;
      Real s_next = 2 * cth * s_cur - s_prev;
      s_prev = s_cur;
      s_cur = s_next;
    }
    Complex expo = Complex(Real(0L), side == Side::plus ? Real(-1L) : Real(1L)) * sum;
    return exp(expo);
  }

 private:
  Real angle_of(const Real& t) const {
    Real x = (2 * t - (c_ + d_)) / (d_ - c_);
    if (x > Real(1L)) x = Real(1L);
    if (x < Real(-1L)) x = Real(-1L);
    return acos(x);
  }
  Complex boundary_psi(const Real& t, Side side) const {
    if (side == Side::off)
      throw std::invalid_argument("SzegoFunction: boundary value needs a side");
    Real theta = angle_of(t);
    return side == Side::plus ? Complex(cos(theta), -sin(theta))
                              : Complex(cos(theta), sin(theta));
  }
  /// (1/2) sum_{k>=1} a_k q^k by Horner from the top.
  Complex half_series(const Complex& q) const {
    Complex acc(0L);
    for (size_t k = a_.size(); k-- > 1;) acc = acc * q + a_[k];
    return acc * q / 2;
  }

  Real c_, d_;
  std::vector<Complex> a_;
};

// ---------------------------------------------------------------------------
// Closed-form Szego data for special factors, all as functions of psi(z).
// Multiplicativity composes them with the series route.
// ---------------------------------------------------------------------------

/// log S of a monic linear factor (t - e):  log(1 - psi(z) psi(e)).
/// Principal branch is safe: |psi(z) psi(e)| < 1 keeps 1 - .. in the right
/// half-plane.
inline Complex szego_linear_log(const Complex& psi_z, const Complex& psi_e) {
  return log(1 - psi_z * psi_e);
}

/// Geometric mean of (t - e):  -1/(ell psi(e)).
inline Complex szego_linear_gmean(const Real& ell, const Complex& psi_e) {
  return -1 / (ell * psi_e);
}

/// log S of the endpoint factors (t-c)^ac (d-t)^ad:
///   ac log(1 + psi) + ad log(1 - psi);  geometric mean ell^{-ac-ad}.
inline Complex szego_endpoint_log(const Complex& psi_z, const Real& ac,
                                  const Real& ad) {
  Complex r(0L);
  if (!ac.is_zero()) r += Complex(ac) * log(1 + psi_z);
  if (!ad.is_zero()) r += Complex(ad) * log(1 - psi_z);
  return r;
}

/// Angle of an interior point x on the segment: psi+(x) = exp(-i angle).
inline Real interior_angle(const Real& c, const Real& d, const Real& x) {
  Real u = (2 * x - (c + d)) / (d - c);
  if (u > Real(1L)) u = Real(1L);
  if (u < Real(-1L)) u = Real(-1L);
  return acos(u);
}

/// log S of an interior-zero factor |t-x|^{2 ax} with angle theta_x:
///   ax [ log(1 - psi e^{i theta_x}) + log(1 - psi e^{-i theta_x}) ];
/// geometric mean ell^{-2 ax}.  Value 0 is returned as log 0 = -inf only
/// when psi sits exactly at the zero; callers handle t = x separately.
inline Complex szego_interior_log(const Complex& psi_z, const Real& theta_x,
                                  const Real& ax) {
  Complex e = polar(Real(1L), theta_x);
  return Complex(ax) * (log(1 - psi_z * e) + log(1 - psi_z * conj(e)));
}

/// Szego data of a full polynomial with roots off the segment.
struct PolySzego {
  Real ell;
  Complex lead;                    // leading coefficient
  std::vector<Complex> psi_roots;  // psi at each root, repeated by multiplicity

  Complex gmean() const {
    Complex g = lead;
    for (const Complex& pe : psi_roots) g *= szego_linear_gmean(ell, pe);
    return g;
  }
  Complex logS(const Complex& psi_z) const {
    Complex s(0L);
    for (const Complex& pe : psi_roots) s += szego_linear_log(psi_z, pe);
    return s;
  }
  Complex value(const Complex& psi_z) const { return exp(logS(psi_z)); }
};

/// Blaschke-type product
///   r_k(v; z) = psi^{k - deg v} prod_e [ (psi - psi(e)) / (1 - psi psi(e)) ],
/// unimodular on the segment with r_k+ r_k- = 1.
struct BlaschkeRk {
  long k{};
  std::vector<Complex> psi_roots;

  Complex eval_psi(const Complex& psi_z) const {
    Complex r = pow(psi_z, k - static_cast<long>(psi_roots.size()));
    for (const Complex& pe : psi_roots)
      r *= (psi_z - pe) / (1 - psi_z * pe);
    return r;
  }
};

namespace geo {

/// psi at every root of v (repeated by multiplicity); throws
/// std::domain_error if a root lies on the segment.
inline std::vector<Complex> psi_of_roots(const Real& c, const Real& d,
                                         const Poly& v,
                                         const PrecisionContext& ctx) {
  std::vector<Complex> out;
  if (v.degree() < 1) return out;
  for (const Complex& e : poly_roots(v, ctx)) {
    // Computed roots of on-segment zeros carry rounding in Im, so test
    // distance to the segment against the root-finder's certified scale.
    Real margin = ctx.convergence_tol() * (1 + abs(e));
    if (abs(e.im) <= margin && e.re >= c - margin && e.re <= d + margin)
      throw std::domain_error("geometry: polynomial root lies on the segment");
    out.push_back(map_values(c, d, e, Side::off).psi);
  }
  return out;
}

}  // namespace geo

inline PolySzego szego_poly(const Real& c, const Real& d, const Poly& v,
                            const PrecisionContext& ctx = {}) {
  geo::check_interval(c, d);
  if (v.is_zero()) throw std::invalid_argument("szego_poly: zero polynomial");
  PolySzego ps;
  ps.ell = 4 / (d - c);
  ps.lead = v.c.back();
  ps.psi_roots = geo::psi_of_roots(c, d, v, ctx);
  return ps;
}

inline BlaschkeRk blaschke_rk(const Real& c, const Real& d, const Poly& v, long k,
                              const PrecisionContext& ctx = {}) {
  geo::check_interval(c, d);
  if (v.is_zero()) throw std::invalid_argument("blaschke_rk: zero polynomial");
  BlaschkeRk r;
  r.psi_roots = geo::psi_of_roots(c, d, v, ctx);
  if (k < static_cast<long>(r.psi_roots.size()))
    throw std::invalid_argument("blaschke_rk: index below the polynomial degree");
  r.k = k;
  return r;
}

// ---------------------------------------------------------------------------
// Szego function of an annulus  rho < |z| < 1/rho.
//
// Given strictly positive boundary data Y on |tau| = rho (implicitly paired
// with 1/Y(1/conj tau) on the outer circle), S is the analytic nonvanishing
// function with
//   G_Y |S(tau)|^2 = Y(tau)        on |tau| = rho,
//   S(z) conj(S(1/conj z)) = 1     in the ring,
//   S(1) > 0,
// where G_Y is the geometric mean of Y over the circle.  Fourier route:
// with F = (1/2) log(Y/G_Y) = sum_{k!=0} F_k e^{ik theta},
//   S(z) = exp( sum_{k>=1} 2 [ b_k z^k - conj(b_k) z^{-k} ] ),
//   b_k  = F_k / (rho^k - rho^{-k}).
// ---------------------------------------------------------------------------

class AnnulusSzego {
 public:
  /// samples: Y at the angles 2 pi j / M on |tau| = rho (M a power of two,
  /// M >= 4).  Throws std::invalid_argument unless every sample is > 0 and
  /// 0 < rho < 1.
  AnnulusSzego(const std::vector<Real>& samples, Real rho) : rho_(std::move(rho)) {
    const size_t M = samples.size();
    if (M < 4 || (M & (M - 1)) != 0)
      throw std::invalid_argument("AnnulusSzego: need a power-of-two sample count >= 4");
    if (!(rho_ > Real(0L) && rho_ < Real(1L)))
      throw std::invalid_argument("AnnulusSzego: need 0 < rho < 1");
    std::vector<Complex> L(M);
    for (size_t j = 0; j < M; ++j) {
      if (!(samples[j] > Real(0L)))
        throw std::invalid_argument("AnnulusSzego: boundary data must be positive");
      L[j] = Complex(log(samples[j]));
    }
    std::vector<Complex> F = fft_forward(std::move(L));
    log_gmean_ = F[0].re / static_cast<long>(M);
    beta_.resize(M / 2 - 1);
    for (size_t k = 1; k < M / 2; ++k) {
      Complex Fk = F[k] / static_cast<long>(2 * M);  // F_k of (1/2) log(Y/G)
      Real pk = pow(rho_, static_cast<long>(k));
      beta_[k - 1] = Fk / (pk - 1 / pk);
    }
  }

  const Real& rho() const { return rho_; }
  Real log_gmean() const { return log_gmean_; }
  Real gmean() const { return exp(log_gmean_); }

  /// S(z) for rho <= |z| <= 1/rho (small slack at the boundaries).
  Complex value(const Complex& z) const {
    Real r = abs(z);
    Real slack = two_pow(-current_precision() / 2);
    if (r < rho_ * (1 - slack) || r > (1 + slack) / rho_)
      throw std::domain_error("AnnulusSzego: point outside the ring");
    Complex zp(1L), zm(1L);
    Complex G(0L);
    const Complex zi = 1 / z;
    for (size_t k = 1; k <= beta_.size(); ++k) {
      zp *= z;
      zm *= zi;
      G += 2 * (beta_[k - 1] * zp - conj(beta_[k - 1]) * zm);
    }
    // Re G(1) = 0 by construction; removing i Im G(1) pins S(1) = 1 > 0.
    return exp(G - Complex(Real(0L), im_at_one()));
  }

 private:
  Real im_at_one() const {
    // G(1) = sum 2 (b_k - conj b_k) = i sum 4 Im b_k.
    Real s(0L);
    for (const Complex& b : beta_) s += b.im;
    return 4 * s;
  }

  Real rho_;
  Real log_gmean_;
  std::vector<Complex> beta_;
};

}  // namespace mera
