// SPDX-License-Identifier: MIT
//
// Pade approximant tests: hand-solved classical cases, exact rational
// reproduction (including the degenerate Hankel branch), equivalence of
// the multipoint construction at all-infinity nodes, interpolation and
// confluent-derivative residuals at circle nodes, the integral error
// representation against direct evaluation, denominator orthogonality
// against the measure, pole dichotomy, and the scheme symmetry report.

#include <utility>
#include <vector>

#include "common.hpp"
#include "oracles.hpp"

#include "mera/pade.hpp"
#include "mera/presets.hpp"

using namespace mera;
using mera::testing::req_close;
using mera::testing::tol2;

namespace {

/// A pure rational function: zero density on [-1,1] plus p/q.
CauchyFunction pure_rational(const Complex& pole, const PrecisionContext& ctx) {
  MeasureSpec ms;
  ms.c = Real(-1);
  ms.d = Real(1);
  ms.pieces.push_back({ms.c, ms.d, Expr::parse("0")});
  Poly q = Poly::from_roots({pole});
  return CauchyFunction::make(std::move(ms),
                              RationalPart::make(Poly::constant(Complex(1L)), std::move(q), ctx),
                              ctx);
}

/// 2 + cos t density with one simple off-segment pole added.
CauchyFunction cos_weight_with_pole(const Complex& pole, const PrecisionContext& ctx) {
  MeasureSpec ms;
  ms.c = Real(-1);
  ms.d = Real(1);
  ms.pieces.push_back({ms.c, ms.d, Expr::parse("2+cos(t)")});
  Poly q = Poly::from_roots({pole});
  return CauchyFunction::make(std::move(ms),
                              RationalPart::make(Poly::constant(Complex(1L)), std::move(q), ctx),
                              ctx);
}

}  // namespace

TEST_CASE("classical approximant of the arcsine markov function") {
  PrecisionContext ctx;
  CauchyFunction F = preset("markov-arcsine", ctx);

  SECTION("n = 2 in closed form") {
    PadeApproximant a = classical_pade(F, 2, ctx);
    REQUIRE(a.monic);
    REQUIRE_FALSE(a.degenerate);
    REQUIRE(a.q.degree() == 2);
    req_close(a.q.c[0], Complex(Real(-1L) / 2), tol2(-120), "q constant");
    req_close(a.q.c[1], Complex(0L), tol2(-120), "q linear");
    REQUIRE(a.p.degree() == 1);
    req_close(a.p.c[0], Complex(0L), tol2(-120), "p constant");
    req_close(a.p.c[1], Complex(1L), tol2(-120), "p linear");
    // Both poles belong to the segment attractor (no rational part).
    REQUIRE(a.rational_poles.empty());
    REQUIRE(a.support_poles.size() == 2);
    Real budget = pow(Real(10L), -(ctx.mantissa_bits / 4)) * a.residual_scale;
    for (const Real& r : a.residuals) REQUIRE(r <= budget);
  }

  SECTION("n = 0 is the zero function") {
    PadeApproximant a = classical_pade(F, 0, ctx);
    REQUIRE(a.p.is_zero());
    REQUIRE(a.q.degree() == 0);
    REQUIRE(a.poles.empty());
  }
}

TEST_CASE("pure rational input is reproduced exactly") {
  PrecisionContext ctx;
  Complex pole(Real("1.5"), Real("0.5"));
  CauchyFunction F = pure_rational(pole, ctx);
  Complex z(Real("2.5"), Real(1L));

  SECTION("n = 1: monic denominator recovers the pole") {
    PadeApproximant a = classical_pade(F, 1, ctx);
    REQUIRE(a.monic);
    REQUIRE_FALSE(a.degenerate);
    req_close(a.q.c[0], -pole, tol2(-240), "q root");
    req_close(a.p.c[0], Complex(1L), tol2(-240), "p");
    req_close(a(z), eval_cauchy(F, z, ctx), tol2(-240), "value");
    REQUIRE(a.rational_poles.size() == 1);
    REQUIRE(a.support_poles.empty());
  }

  SECTION("n = 2: singular system flagged, same function returned") {
    PadeApproximant a = classical_pade(F, 2, ctx);
    REQUIRE(a.degenerate);
    req_close(a(z), eval_cauchy(F, z, ctx), tol2(-200), "degenerate value");
    Complex z2(Real("-0.3"), Real("2.1"));
    req_close(a(z2), eval_cauchy(F, z2, ctx), tol2(-200), "degenerate value 2");
  }

  SECTION("multipoint with one conjugate node pair reproduces it too") {
    std::vector<InterpPoint> e1 = {InterpPoint::at(Complex(Real(0L), Real(2L))),
                                   InterpPoint::at(Complex(Real(0L), Real(-2L)))};
    PadeApproximant a = multipoint_pade(F, 1, e1, ctx);
    REQUIRE(a.monic);
    req_close(a.q.c[0], -pole, tol2(-230), "multipoint q root");
    req_close(a(z), eval_cauchy(F, z, ctx), tol2(-230), "multipoint value");
  }
}

TEST_CASE("multipoint at all-infinity nodes equals the classical construction") {
  PrecisionContext ctx;
  CauchyFunction F = preset("cos-weight", ctx);
  InterpolationScheme sch = InterpolationScheme::classical();
  for (long n : {1L, 4L, 8L}) {
    PadeApproximant cl = classical_pade(F, n, ctx);
    PadeApproximant mp = multipoint_pade(F, n, sch.points(n), ctx);
    REQUIRE(cl.monic);
    REQUIRE(mp.monic);
    REQUIRE(cl.q.degree() == mp.q.degree());
    REQUIRE(cl.p.degree() == mp.p.degree());
    for (long i = 0; i <= cl.q.degree(); ++i)
      REQUIRE(abs(cl.q.c[i] - mp.q.c[i]) < Real("1e-30"));
    for (long i = 0; i <= cl.p.degree(); ++i)
      REQUIRE(abs(cl.p.c[i] - mp.p.c[i]) < Real("1e-30"));
  }
}

TEST_CASE("multipoint circle nodes: interpolation residuals vanish") {
  PrecisionContext ctx;
  CauchyFunction F = preset("markov-half", ctx);
  InterpolationScheme sch = InterpolationScheme::circle(Real(3L), 12);
  const long n = 6;
  std::vector<InterpPoint> e6 = sch.points(n);
  PadeApproximant a = multipoint_pade(F, n, e6, ctx);
  REQUIRE(a.monic);

  for (const InterpPoint& pt : e6) {
    Complex val = eval_cauchy(F, pt.z, ctx);
    Complex res = a.q(pt.z) * val - a.p(pt.z);
    Real scale = (1 + abs(val)) * max(Real(1L), max(a.q.max_abs_coeff(), a.p.max_abs_coeff())) *
                 pow(1 + abs(pt.z), n);
    REQUIRE(abs(res) <= Real("1e-20") * scale);
  }
}

TEST_CASE("repeated circle nodes add confluent derivative conditions") {
  PrecisionContext ctx;
  CauchyFunction F = preset("cos-weight", ctx);
  InterpolationScheme sch = InterpolationScheme::circle(Real(2L), 4);
  const long n = 4;
  std::vector<InterpPoint> e4 = sch.points(n);  // two conjugate pairs, twice each
  PadeApproximant a = multipoint_pade(F, n, e4, ctx);
  REQUIRE(a.monic);

  Complex e = e4[0].z;
  std::vector<Complex> T = detail::cauchy_taylor(F, e, 2, ctx);
  Real scale = max(Real(1L), max(a.q.max_abs_coeff(), a.p.max_abs_coeff())) *
               pow(1 + abs(e), n) * (1 + abs(T[0]) + abs(T[1]));
  Complex value_res = a.q(e) * T[0] - a.p(e);
  Complex deriv_res = a.q.derivative()(e) * T[0] + a.q(e) * T[1] - a.p.derivative()(e);
  REQUIRE(abs(value_res) <= Real("1e-30") * scale);
  REQUIRE(abs(deriv_res) <= Real("1e-30") * scale);
}

TEST_CASE("taylor data of the full function matches closed forms") {
  PrecisionContext ctx;
  Complex pole(Real("1.5"), Real("0.5"));
  CauchyFunction F = pure_rational(pole, ctx);
  Complex e(Real(-2L), Real(1L));
  // 1/(z-a): Taylor coefficient s at e is (-1)^s/(e-a)^(s+1).
  std::vector<Complex> T = detail::cauchy_taylor(F, e, 4, ctx);
  Complex d = e - pole;
  for (long s = 0; s < 4; ++s) {
    Complex want = (s % 2 == 0 ? Complex(1L) : Complex(-1L)) / pow(d, s + 1);
    req_close(T[s], want, tol2(-230), "rational taylor");
  }

  CauchyFunction M = preset("markov-arcsine", ctx);
  // C(z) = 1/sqrt(z^2-1): C'(z) = -z (z^2-1)^(-3/2).
  std::vector<Complex> TM = detail::cauchy_taylor(M, Complex(Real(2L)), 2, ctx);
  req_close(TM[0], Complex(1 / sqrt(Real(3L))), tol2(-120), "markov value");
  req_close(TM[1], Complex(-2 / (3 * sqrt(Real(3L)))), tol2(-120), "markov derivative");
}

TEST_CASE("error representation agrees with direct evaluation") {
  PrecisionContext ctx;
  CauchyFunction F = preset("markov-half", ctx);

  SECTION("classical, n = 8, z = 2") {
    PadeApproximant a = classical_pade(F, 8, ctx);
    PadeError err = pade_error(F, a, Complex(Real(2L)), ctx);
    REQUIRE(abs(err.direct - err.integral) <= Real("1e-10") * abs(err.direct));
  }

  SECTION("multipoint circle nodes, n = 6") {
    InterpolationScheme sch = InterpolationScheme::circle(Real(3L), 12);
    PadeApproximant a = multipoint_pade(F, 6, sch.points(6), ctx);
    Complex z(Real("1.5"), Real("0.5"));
    PadeError err = pade_error(F, a, z, ctx);
    REQUIRE(abs(err.direct - err.integral) <= Real("1e-12") * abs(err.direct));
  }

  SECTION("decay rate tracks the squared conformal map") {
    Real target = norm(map_values(F.measure.c, F.measure.d, Complex(Real(2L))).psi);
    Real e12 = abs(pade_error(F, classical_pade(F, 12, ctx), Complex(Real(2L)), ctx).direct);
    Real e13 = abs(pade_error(F, classical_pade(F, 13, ctx), Complex(Real(2L)), ctx).direct);
    REQUIRE(abs(e13 / e12 - target) <= Real("0.03") * target);
  }
}

TEST_CASE("denominator orthogonality and pole dichotomy under a rational part") {
  PrecisionContext ctx;
  Complex pole(Real("1.2"), Real("0.5"));
  CauchyFunction F = cos_weight_with_pole(pole, ctx);
  CauchyFunction Fmeas = preset("cos-weight", ctx);  // same measure, no pole

  SECTION("the measure kills t^j q q_n for j < n - m") {
    const long n = 6;
    PadeApproximant a = classical_pade(F, n, ctx);
    REQUIRE(a.monic);
    std::vector<Complex> mu = moments(Fmeas, 2 * n, ctx);
    Poly qqn = a.q * F.rational->q;
    Real mu_scale(1L);
    for (const Complex& m : mu) mu_scale = max(mu_scale, abs(m));
    Real budget = Real("1e-55") * mu_scale * max(Real(1L), qqn.max_abs_coeff());
    for (long j = 0; j + 1 <= n - 1; ++j) {  // j = 0..n-m-1 with m = 1
      Complex r;
      for (long i = 0; i <= qqn.degree(); ++i) r += qqn.c[i] * mu[i + j];
      REQUIRE(abs(r) <= budget);
    }
  }

  SECTION("exactly m poles fly to the rational part at n = 16") {
    PadeApproximant a = classical_pade(F, 16, ctx);
    REQUIRE(a.monic);
    REQUIRE(a.rational_poles.size() == 1);
    REQUIRE(a.support_poles.size() == 15);
    REQUIRE(a.tie_count == 0);
    req_close(a.rational_poles[0], pole, Real("1e-8"), "pole attracted");
    for (const Complex& sp : a.support_poles)
      REQUIRE(CauchyFunction::dist_to_segment(sp, F.measure.c, F.measure.d) < Real("0.2"));
  }
}

TEST_CASE("scheme symmetry report") {
  PrecisionContext ctx;
  CondenserGeometry geom = build_geometry(Real(-1), Real(1), 64, ctx);

  SECTION("conjugate-symmetric circle scheme: zero matching cost") {
    InterpolationScheme sch = InterpolationScheme::circle(Real(3L), 8);
    AdmissibilityReport rep = admissibility_report(sch, 6, geom, ctx);
    REQUIRE_FALSE(rep.growth_flagged);
    REQUIRE(rep.levels.size() == 6);
    // Nearest node to [-1,1] sits at angle pi/8 on the circle of radius 3.
    Real want = hypot(3 * cos(pi() / 8) - 1, 3 * sin(pi() / 8));
    for (const AdmissibilityLevel& lvl : rep.levels) {
      REQUIRE(lvl.matching_sum <= tol2(-200));
      REQUIRE(lvl.finite_count == 2 * lvl.n);
      req_close(lvl.separation, want, tol2(-240), "separation from the segment");
    }
  }

  SECTION("classical scheme: empty finite sets") {
    AdmissibilityReport rep =
        admissibility_report(InterpolationScheme::classical(), 4, geom, ctx);
    REQUIRE_FALSE(rep.growth_flagged);
    for (const AdmissibilityLevel& lvl : rep.levels) {
      REQUIRE(lvl.matching_sum.is_zero());
      REQUIRE(lvl.finite_count == 0);
    }
  }

  SECTION("one unpaired node per level: linear growth is flagged") {
    Complex bad(Real(2L), Real(1L));
    std::vector<std::vector<InterpPoint>> levels(9);
    for (long n = 0; n < 9; ++n) {
      levels[n].assign(n, InterpPoint::at(bad));
      levels[n].resize(2 * n, InterpPoint::infinity());
    }
    InterpolationScheme sch = InterpolationScheme::explicit_scheme(std::move(levels));
    AdmissibilityReport rep = admissibility_report(sch, 8, geom, ctx);
    REQUIRE(rep.growth_flagged);
    Real unit = abs(map_values(Real(-1), Real(1), conj(bad)).psi -
                    map_values(Real(-1), Real(1), bad).psi);
    for (const AdmissibilityLevel& lvl : rep.levels)
      req_close(lvl.matching_sum, Real(lvl.n) * unit, tol2(-200) * (1 + Real(lvl.n)),
                "linear matching growth");
  }
}

TEST_CASE("node and scheme validation") {
  PrecisionContext ctx;
  CauchyFunction F = preset("markov-arcsine", ctx);

  REQUIRE_THROWS_AS(InterpolationScheme::circle(Real(2L), 3), std::invalid_argument);
  REQUIRE_THROWS_AS(InterpolationScheme::circle(Real(0L), 4), std::invalid_argument);

  std::vector<InterpPoint> on_cut = {InterpPoint::at(Complex(Real("0.3"))),
                                     InterpPoint::at(Complex(Real("0.3")))};
  REQUIRE_THROWS_AS(multipoint_pade(F, 1, on_cut, ctx), std::domain_error);

  Complex pole(Real("1.5"), Real("0.5"));
  CauchyFunction R = pure_rational(pole, ctx);
  std::vector<InterpPoint> at_pole = {InterpPoint::at(pole), InterpPoint::at(conj(pole))};
  REQUIRE_THROWS_AS(multipoint_pade(R, 1, at_pole, ctx), std::domain_error);

  std::vector<InterpPoint> wrong_size = {InterpPoint::infinity()};
  REQUIRE_THROWS_AS(multipoint_pade(F, 1, wrong_size, ctx), std::invalid_argument);
}
