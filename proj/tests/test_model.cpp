// SPDX-License-Identifier: MIT
//
// Model tests: expression language, measures, moments, pointwise
// evaluation.  Reference values: closed-form arcsine moments, geometric
// Laurent series, the Markov identity 1/w, and tanh-sinh oracle
// integration (independent of the Gauss-Jacobi pipeline under test).

#include "common.hpp"
#include "oracles.hpp"

#include "mera/model.hpp"
#include "mera/presets.hpp"

using namespace mera;
using mera::testing::req_close;
using mera::testing::tol2;

namespace {

/// Measure-part Laurent coefficient  integral t^k f(t) dt  of the
/// bundled two-piece example, via the tanh-sinh oracle.
Complex sec8_measure_moment_oracle(long k, const Real& tol) {
  Real c("-0.7"), d("0.4"), zero(0);
  auto piece1 = [&](const Real& t, const Real& da, const Real& db) {
    (void)db;
    Complex h = Real(7) * exp(Complex(Real(0), t));
    return pow(Complex(t), k) * h / sqrt(da * (d - t));
  };
  auto piece2 = [&](const Real& t, const Real& da, const Real& db) {
    (void)da;
    Complex h = Complex(Real(1), t);  // 1 + i t
    return pow(Complex(t), k) * h / sqrt((t - c) * db);
  };
  return oracle::tanh_sinh(piece1, c, zero, tol) +
         oracle::tanh_sinh(piece2, zero, d, tol);
}

}  // namespace

TEST_CASE("expression language: parsing and evaluation") {
  Expr e = Expr::parse("2 + cos(t)");
  req_close(e(Real(0)), Complex(3, 0), tol2(-250), "2+cos(0)");
  Expr f = Expr::parse("7*pi*exp(i*t)");
  Real t("0.5");
  req_close(f(t), 7 * pi() * Complex(cos(t), sin(t)), tol2(-245), "7 pi e^{it}");
  req_close(Expr::parse("t^3")(Real(2)), Complex(8, 0), tol2(-245), "t^3");
  req_close(Expr::parse("(1+t)^(1/2)")(Real(3)), Complex(2, 0), tol2(-245),
            "fractional power");
  req_close(Expr::parse("-t*2e1")(Real(1)), Complex(-20, 0), tol2(-245), "exponent literal");
  req_close(Expr::parse("abs(-3*i)")(Real(0)), Complex(3, 0), tol2(-245), "abs");
  req_close(Expr::parse("log(exp(1))")(Real(0)), Complex(1, 0), tol2(-240), "log exp");
  req_close(Expr::parse("sqrt(t)")(Complex(0, 1)),
            polar(Real(1), pi() / 4), tol2(-240), "principal sqrt(i)");
  // Literals re-evaluate at the scope's precision.
  Expr third = Expr::parse("1/3");
  Real lo = third(Real(0)).re;
  {
    PrecisionScope hi(512);
    Real hi_v = third(Real(0)).re;
    REQUIRE(abs(hi_v - Real(1) / 3) <= tol2(-500));
    REQUIRE(abs(hi_v - lo) > tol2(-300));  // genuinely more accurate
  }
  REQUIRE_THROWS_AS(Expr::parse("2+"), std::invalid_argument);
  REQUIRE_THROWS_AS(Expr::parse("foo(t)"), std::invalid_argument);
  REQUIRE_THROWS_AS(Expr::parse("t t"), std::invalid_argument);
  REQUIRE_THROWS_AS(Expr::parse("(1+t"), std::invalid_argument);
}

TEST_CASE("measure validation rejects malformed specs") {
  MeasureSpec ms;
  ms.c = Real(1);
  ms.d = Real(-1);
  ms.pieces.push_back({ms.c, ms.d, Expr::parse("1")});
  REQUIRE_THROWS_AS(ms.validate(), std::invalid_argument);
  ms.c = Real(-1);
  ms.d = Real(1);
  ms.pieces.clear();
  ms.pieces.push_back({Real(-1), Real(0), Expr::parse("1")});
  REQUIRE_THROWS_AS(ms.validate(), std::invalid_argument);  // gap at the right
  ms.pieces.push_back({Real(0), Real(1), Expr::parse("1")});
  REQUIRE_NOTHROW(ms.validate());
  ms.alpha_c = Real("0.5");
  REQUIRE_THROWS_AS(ms.validate(), std::invalid_argument);  // must be < 1/2
  ms.alpha_c = Real("0.25");
  REQUIRE_NOTHROW(ms.validate());
  ms.interior.push_back({Real(2), Real("0.25")});
  REQUIRE_THROWS_AS(ms.validate(), std::invalid_argument);  // x outside (c,d)
  ms.interior.back() = {Real(0), Real(0)};
  REQUIRE_THROWS_AS(ms.validate(), std::invalid_argument);  // alpha_x must be > 0
}

TEST_CASE("rational part validation and Laurent recurrence") {
  PrecisionContext ctx;
  // q not monic.
  REQUIRE_THROWS_AS(
      RationalPart::make(Poly::constant(Complex(1L)),
                         Poly({Complex(1L), Complex(2L)}), ctx),
      std::invalid_argument);
  // deg p >= deg q.
  REQUIRE_THROWS_AS(
      RationalPart::make(Poly({Complex(1L), Complex(1L)}),
                         Poly({Complex(1L), Complex(1L)}), ctx),
      std::invalid_argument);
  // Shared root z=1 between p and q.
  REQUIRE_THROWS_AS(
      RationalPart::make(Poly::from_roots({Complex(1, 0)}),
                         Poly::from_roots({Complex(1, 0), Complex(2, 0)}), ctx),
      std::invalid_argument);

  // Geometric series: 1/(z-a) has d_k = a^k.
  Complex a(Real("0.3"), Real("0.1"));
  auto rp = RationalPart::make(Poly::constant(Complex(1L)), Poly::from_roots({a}), ctx);
  auto d = rp.laurent(6);
  Complex want(1L);
  for (long k = 0; k < 6; ++k) {
    req_close(d[k], want, tol2(-240), "geometric d_k");
    want *= a;
  }

  // A 6-fold pole starts at z^-6: d_0..d_4 vanish, d_5 = p's constant.
  Complex eta(Real("0.7"), Real("0.2"));
  auto rp6 = RationalPart::make(Poly::constant(Complex(Real(1) / 120)),
                                Poly::from_roots(std::vector<Complex>(6, eta)), ctx);
  auto d6 = rp6.laurent(8);
  for (long k = 0; k <= 4; ++k) req_close(d6[k], Complex(0L), tol2(-240), "vanishing head");
  req_close(d6[5], Complex(Real(1) / 120), tol2(-240), "d_5");
  req_close(d6[6], Complex(Real(1) / 20) * eta, tol2(-238), "d_6 = 6 eta/120");
}

TEST_CASE("moments: arcsine closed form and geometric tail") {
  PrecisionContext ctx;
  auto F = preset("markov-arcsine", ctx);
  auto c = moments(F, 5, ctx);
  req_close(c[0], Complex(1L), tol2(-120), "c0");
  req_close(c[1], Complex(0L), tol2(-120), "c1");
  req_close(c[2], Complex(Real(1) / 2), tol2(-120), "c2");
  req_close(c[3], Complex(0L), tol2(-120), "c3");
  req_close(c[4], Complex(Real(3) / 8), tol2(-120), "c4");

  // Zero measure + 1/(z-a): c_k = a^k.
  MeasureSpec zm;
  zm.c = Real(-1);
  zm.d = Real(1);
  zm.pieces.push_back({zm.c, zm.d, Expr::parse("0")});
  Complex a(Real("0.3"), Real("0.1"));
  auto F2 = CauchyFunction::make(
      zm, RationalPart::make(Poly::constant(Complex(1L)), Poly::from_roots({a}), ctx), ctx);
  auto c2 = moments(F2, 4, ctx);
  Complex want(1L);
  for (long k = 0; k < 4; ++k) {
    req_close(c2[k], want, tol2(-240), "a^k");
    want *= a;
  }
}

TEST_CASE("moments: linearity in the measure") {
  PrecisionContext ctx;
  auto make_f = [&](const char* src) {
    MeasureSpec ms;
    ms.c = Real(-1);
    ms.d = Real(1);
    ms.pieces.push_back({ms.c, ms.d, Expr::parse(src)});
    return CauchyFunction::make(ms, {}, ctx);
  };
  auto ca = moments(make_f("1"), 6, ctx);
  auto cb = moments(make_f("t^2/(2+t)"), 6, ctx);
  auto cab = moments(make_f("1 + t^2/(2+t)"), 6, ctx);
  for (long k = 0; k < 6; ++k)
    req_close(cab[k], ca[k] + cb[k], tol2(-120), "additivity");
}

TEST_CASE("eval_cauchy: Markov identity and rational part") {
  PrecisionContext ctx;
  auto F = preset("markov-arcsine", ctx);
  req_close(eval_cauchy(F, Complex(2, 0), ctx), Complex(1 / sqrt(Real(3))),
            tol2(-120), "1/w(2) = 1/sqrt3");

  MeasureSpec zm;
  zm.c = Real(-1);
  zm.d = Real(1);
  zm.pieces.push_back({zm.c, zm.d, Expr::parse("0")});
  Complex a(Real("0.25"), Real("0.5"));
  auto F2 = CauchyFunction::make(
      zm, RationalPart::make(Poly::constant(Complex(1L)), Poly::from_roots({a}), ctx), ctx);
  Complex z(Real(-2), Real("0.5"));
  req_close(eval_cauchy(F2, z, ctx), 1 / (z - a), tol2(-240), "1/(z-a)");

  // Exclusion region: points on or near the cut are rejected.
  REQUIRE_THROWS_AS(eval_cauchy(F, Complex(Real(0), Real(0)), ctx), std::domain_error);
  REQUIRE_THROWS_AS(eval_cauchy(F, Complex(Real("0.3"), Real("1e-7")), ctx),
                    std::domain_error);
  REQUIRE_THROWS_AS(eval_cauchy(F2, a + Complex(Real("1e-7"), Real(0)), ctx),
                    std::domain_error);
}

TEST_CASE("eval_cauchy: conjugate symmetry for real data") {
  PrecisionContext ctx;
  auto F = preset("cos-weight", ctx);
  Complex z(Real("1.7"), Real("0.9"));
  req_close(eval_cauchy(F, conj(z), ctx), conj(eval_cauchy(F, z, ctx)), tol2(-120),
            "Schwarz reflection");
}

TEST_CASE("bundled two-piece example: moments match the tanh-sinh oracle") {
  PrecisionContext ctx;
  auto F = preset("paper-sec8", ctx);
  auto c = moments(F, 3, ctx);
  Real otol = tol2(-180);
  for (long k = 0; k < 3; ++k) {
    Complex want = sec8_measure_moment_oracle(k, otol);
    req_close(c[k], want, tol2(-110), "moment vs oracle");
  }
}

TEST_CASE("bundled two-piece example: evaluation matches the oracle") {
  PrecisionContext ctx;
  auto F = preset("paper-sec8", ctx);
  Complex z(2, 0);
  Real c("-0.7"), d("0.4"), zero(0);
  Real otol = tol2(-180);
  auto piece1 = [&](const Real& t, const Real& da, const Real& db) {
    (void)db;
    Complex h = Real(7) * exp(Complex(Real(0), t));
    return h / (sqrt(da * (d - t)) * (z - t));
  };
  auto piece2 = [&](const Real& t, const Real& da, const Real& db) {
    (void)da;
    Complex h = Complex(Real(1), t);
    return h / (sqrt((t - c) * db) * (z - t));
  };
  Complex eta(Real("0.7"), Real("0.2"));
  Complex want = oracle::tanh_sinh(piece1, c, zero, otol) +
                 oracle::tanh_sinh(piece2, zero, d, otol) +
                 1 / (pow(z - eta, 6L) * 120);
  req_close(eval_cauchy(F, z, ctx), want, tol2(-110), "eval vs oracle");
}

TEST_CASE("moment consistency: Laurent tail approximates evaluation") {
  PrecisionContext ctx;
  auto F = preset("paper-sec8", ctx);
  const long K = 120;
  auto c = moments(F, K, ctx);
  Complex z(Real("2.5"), Real("0.3"));
  Complex direct = eval_cauchy(F, z, ctx);
  Complex series;
  Complex zk = 1 / z;
  for (long k = 0; k < K; ++k) {
    series += c[k] * zk;
    zk /= z;
  }
  // Tail bound: |c_k| <= M r^k fitted on the last half of the run.
  Real r(0L);
  for (long k = K / 2; k + 1 < K; ++k) {
    Real ratio = abs(c[k + 1]) / abs(c[k]);
    if (ratio > r) r = ratio;
  }
  Real M(0L);
  for (long k = K / 2; k < K; ++k) M = mera::max(M, abs(c[k]) / pow(r, k));
  Real az = abs(z);
  Real tail = M * pow(r / az, K) / (az * (1 - r / az));
  INFO("fitted r = " << to_string(r, 8) << " tail = " << to_string(tail, 8));
  REQUIRE(abs(direct - series) <= 10 * tail + tol2(-120));
}

TEST_CASE("inside_unit_disk gate for circle-based approximation") {
  PrecisionContext ctx;
  REQUIRE(!preset("markov-arcsine", ctx).inside_unit_disk());  // endpoints on T
  REQUIRE(preset("markov-half", ctx).inside_unit_disk());
  REQUIRE(preset("paper-sec8", ctx).inside_unit_disk());
}

TEST_CASE("accuracy errors carry the best achieved estimate") {
  PrecisionContext ctx;
  // Interior |t-x|^(1/2) factor: kept in the integrand, so plain rule
  // doubling stalls at algebraic convergence and must report honestly.
  MeasureSpec ms;
  ms.c = Real(-1);
  ms.d = Real(1);
  ms.pieces.push_back({ms.c, ms.d, Expr::parse("1")});
  ms.interior.push_back({Real("0.3"), Real("0.25")});
  auto F = CauchyFunction::make(ms, {}, ctx);
  bool threw = false;
  try {
    moments(F, 2, ctx);
  } catch (const AccuracyError& e) {
    threw = true;
    REQUIRE(e.achieved.size() == 2);
    // The achieved c_0 is still good to ~1e-5: compare with the oracle,
    // splitting at the interior point where the factor is singular.
    Real x("0.3"), otol = tol2(-170);
    // Integrand |t-x|^(1/2) / (pi sqrt((t+1)(1-t))), split at x so the
    // half-power sits at a subinterval endpoint; endpoint distances da/db
    // keep every singular factor cancellation-free.
    auto lal = [&](const Real& t, const Real& da, const Real& db) {
      return Complex(sqrt(db / (da * (1 - t))) / pi());  // on [-1, x]
    };
    auto lar = [&](const Real& t, const Real& da, const Real& db) {
      return Complex(sqrt(da / ((t + 1) * db)) / pi());  // on [x, 1]
    };
    Complex want = oracle::tanh_sinh(lal, ms.c, x, otol) +
                   oracle::tanh_sinh(lar, x, ms.d, otol);
    req_close(e.achieved[0], want, Real("1e-4"), "achieved estimate quality");
  }
  REQUIRE(threw);

  // Evaluation extremely close to the cut exhausts the node budget.
  auto FM = preset("markov-arcsine", ctx);
  REQUIRE_THROWS_AS(eval_cauchy(FM, Complex(Real(0), Real("2.4e-6")), ctx),
                    AccuracyError);
}
