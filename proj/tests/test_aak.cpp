// SPDX-License-Identifier: MIT
//
// Circle-approximant tests: Hankel truncation entries and decay fit
// against hand-computed moments, closed-form singular data for rank-one
// and single-coefficient symbols, constant error modulus on the circle,
// monotonicity of singular values in the truncation order, pole
// stability under doubling the truncation, the reciprocal-polynomial
// Blaschke identity, Laurent reconstruction of the approximant, and
// outer factors against closed forms.

#include <utility>
#include <vector>

#include "common.hpp"

#include "mera/aak.hpp"
#include "mera/presets.hpp"

using namespace mera;
using mera::testing::req_close;
using mera::testing::tol2;

namespace {

/// Pure rational 1/(z - a) carried by a zero density on a segment well
/// inside the unit disk.
CauchyFunction inverse_pole(const Complex& a, const Real& lo, const Real& hi,
                            const PrecisionContext& ctx) {
  MeasureSpec ms;
  ms.c = lo;
  ms.d = hi;
  ms.pieces.push_back({ms.c, ms.d, Expr::parse("0")});
  Poly q = Poly::from_roots({a});
  return CauchyFunction::make(std::move(ms),
                              RationalPart::make(Poly::constant(Complex(1L)), std::move(q), ctx),
                              ctx);
}

std::vector<Complex> circle_grid(long count) {
  std::vector<Complex> taus;
  taus.reserve(count);
  for (long j = 0; j < count; ++j)
    taus.push_back(polar(Real(1L), 2 * pi() * j / count + Real(1L) / 7));
  return taus;
}

/// Shared decomposition of the half-length arcsine Markov function.
const CauchyFunction& half_markov() {
  static CauchyFunction F = preset("markov-half", PrecisionContext{});
  return F;
}
const HankelDecomposition& half_markov_32() {
  static HankelDecomposition hd = hankel_decompose(half_markov(), 32, PrecisionContext{});
  return hd;
}

}  // namespace

TEST_CASE("hankel truncation: entries, decay fit, and guards") {
  PrecisionContext ctx;

  SECTION("entries are the moments of the half-length arcsine weight") {
    // Arcsine moments on [-1/2, 1/2]: 1, 0, 1/8, 0, ...
    HankelTruncation t = hankel_matrix(half_markov(), 4, ctx);
    REQUIRE(t.H.rows == 5);
    REQUIRE(t.H.cols == 5);
    req_close(t.H(0, 0), Complex(1L), tol2(-240), "H(0,0)");
    req_close(t.H(1, 0), Complex(), tol2(-240), "H(1,0)");
    req_close(t.H(1, 1), Complex(Real(1L) / 8), tol2(-240), "H(1,1)");
    req_close(t.H(3, 1), t.H(2, 2), tol2(-260), "anti-diagonal constancy");
  }

  SECTION("decay fit sees the 1/2 coefficient rate") {
    HankelTruncation t = hankel_matrix(half_markov(), 16, ctx);
    // Even moments scale like (1/2)^k / sqrt(k); the fitted rate sits
    // slightly below 1/2 because of the algebraic factor.
    REQUIRE(t.decay_rate > Real("0.40"));
    REQUIRE(t.decay_rate < Real("0.52"));
    REQUIRE(t.tail_bound > Real(0L));
    REQUIRE(t.tail_bound < Real("1e-8"));
    // The fitted envelope really bounds the window it was fitted on.
    for (long k = 25; k <= 32; ++k)
      REQUIRE(abs(t.c[k]) <= t.coeff_scale * pow(t.decay_rate, k) * (1 + tol2(-40)));
  }

  SECTION("support touching the unit circle is rejected") {
    CauchyFunction F = preset("markov-arcsine", ctx);  // [-1,1] touches
    REQUIRE_THROWS_AS(hankel_matrix(F, 4, ctx), std::domain_error);
  }

  SECTION("nonpositive order is rejected") {
    REQUIRE_THROWS_AS(hankel_matrix(half_markov(), 0, ctx), std::invalid_argument);
  }
}

TEST_CASE("single inverse-power symbol: exact rank-one data") {
  PrecisionContext ctx;
  // 1/z has Laurent coefficients (1, 0, 0, ...): the truncation is the
  // elementary matrix e_0 e_0^T whatever the order.
  CauchyFunction F = inverse_pole(Complex(), Real("0.3"), Real("0.6"), ctx);

  HankelTruncation t = hankel_matrix(F, 8, ctx);
  req_close(t.H(0, 0), Complex(1L), tol2(-250), "only nonzero entry");
  req_close(t.H(4, 3), Complex(), tol2(-250), "zero away from the corner");
  REQUIRE(t.tail_bound == Real(0L));  // all-zero fit window

  HankelDecomposition hd = hankel_decompose(F, 8, ctx);
  AakApproximant a0 = aak_approximant(F, 0, hd, ctx);
  req_close(a0.sigma, Real(1L), tol2(-250), "sigma_0");
  REQUIRE(a0.poles.empty());
  REQUIRE(a0.indeterminate.empty());
  REQUIRE(a0.irreducible);
  REQUIRE_FALSE(a0.non_simple);
  REQUIRE(a0.g_numer.max_abs_coeff() <= tol2(-230));

  // The best analytic approximation of 1/z is zero: the error keeps
  // modulus exactly 1 on the circle.
  CircleErrorReport rep = aak_error_on_circle(F, a0, circle_grid(64), ctx);
  req_close(rep.max_modulus, Real(1L), tol2(-230), "max |f - g|");
  req_close(rep.min_modulus, Real(1L), tol2(-230), "min |f - g|");

  // Beyond the rank every singular value is exactly zero, and the
  // approximant there is flagged as resting on a non-simple value.
  AakApproximant a1 = aak_approximant(F, 1, hd, ctx);
  REQUIRE(a1.sigma <= tol2(-250));
  REQUIRE(a1.non_simple);

  REQUIRE_THROWS_AS(aak_approximant(F, 8, hd, ctx), std::invalid_argument);
  REQUIRE_THROWS_AS(aak_approximant(F, -1, hd, ctx), std::invalid_argument);
}

TEST_CASE("rank-one pole symbol: sigma in closed form, constant modulus") {
  PrecisionContext ctx;
  const Complex a(Real("0.35"), Real("0.45"));
  const Real t = Real("0.325");  // |a|^2
  CauchyFunction F = inverse_pole(a, Real("-0.5"), Real("0.5"), ctx);

  // Laurent coefficients a^k make H_{jk} = a^{j+k}, a rank-one outer
  // product, so sigma_0 = sum_{k<=N} |a|^(2k) exactly.  The error
  // modulus differs from the constant sigma_0 by O(|a|^N), so N is
  // sized to push that below the rank-exact gate of 1e-8.
  const long N = 48;
  HankelDecomposition hd = hankel_decompose(F, N, ctx);
  Real sigma_exact = (1 - pow(t, N + 1)) / (1 - t);
  AakApproximant a0 = aak_approximant(F, 0, hd, ctx);
  req_close(a0.sigma, sigma_exact, tol2(-230), "truncated geometric sum");
  req_close(a0.sigma, 1 / (1 - t), Real("1e-20"), "operator limit 1/(1-|a|^2)");
  REQUIRE(hd.svd.sigma[1] <= a0.sigma * tol2(-200));

  // The singular vector is the truncated geometric series in conj(a) z;
  // its zeros sit on the circle |z| = 1/|a|, far outside the disk.
  REQUIRE(a0.poles.empty());
  REQUIRE(a0.irreducible);
  Poly v = a0.v;
  REQUIRE(v.degree() == N);
  for (const Complex& r : poly_roots(v, ctx)) REQUIRE(abs(r) > Real("1.5"));

  // Degree-zero approximant is analytic: no principal Laurent part.
  REQUIRE(a0.g_principal.empty());
  REQUIRE_FALSE(a0.g_analytic.empty());

  // Constant error modulus on the circle at the rank-exact tolerance.
  CircleErrorReport rep = aak_error_on_circle(F, a0, circle_grid(1024), ctx);
  REQUIRE(rep.max_deviation <= Real("1e-8") * a0.sigma);
}

TEST_CASE("half-length markov symbol: structure of the degree-3 approximant") {
  PrecisionContext ctx;
  const CauchyFunction& F = half_markov();
  const HankelDecomposition& hd = half_markov_32();

  AakApproximant a = aak_approximant(F, 3, hd, ctx);
  REQUIRE(a.sigma > Real(0L));
  REQUIRE(a.gap > Real("0.5"));  // cleanly separated singular values
  REQUIRE_FALSE(a.non_simple);
  REQUIRE(a.indeterminate.empty());
  REQUIRE(a.poles.size() == 3);
  REQUIRE(a.irreducible);

  // Poles of best circle approximants to a real Markov function stay
  // on the real axis inside the support interval.
  for (const Complex& p : a.poles) {
    REQUIRE(abs(p.im) <= tol2(-100));
    REQUIRE(abs(p.re) < Real("0.5"));
  }

  // Blaschke identity: the monic polynomial over the poles against its
  // reciprocal conjugate has unit modulus on the circle.
  Poly q = Poly::from_roots(a.poles);
  Poly qr = q.reciprocal_conj();
  for (const Complex& tau : circle_grid(16))
    req_close(abs(q(tau) / qr(tau)), Real(1L), tol2(-230), "|q/q~| on the circle");

  // Laurent coefficients reproduce pointwise values of g off the grid.
  REQUIRE_FALSE(a.g_analytic.empty());
  REQUIRE(a.g_principal.size() >= 3);
  Complex tau = polar(Real(1L), Real("0.9"));
  Complex direct = a.g(tau);
  Complex series;
  Complex pw(1L);
  for (size_t m = 0; m < a.g_analytic.size(); ++m) {
    series += a.g_analytic[m] * pw;
    pw *= tau;
  }
  Complex inv = Complex(1L) / tau;
  pw = inv;
  for (size_t l = 0; l < a.g_principal.size(); ++l) {
    series += a.g_principal[l] * pw;
    pw *= inv;
  }
  req_close(series, direct, tol2(-80) * (1 + abs(direct)), "Laurent reconstruction");

  // Near-constant error modulus (truncation-limited, not rank-exact).
  CircleErrorReport rep = aak_error_on_circle(F, a, circle_grid(256), ctx);
  REQUIRE(rep.min_modulus > Real(0L));
  REQUIRE(rep.max_modulus / rep.min_modulus < Real("1.001"));
}

TEST_CASE("singular values grow with truncation order; poles stabilize") {
  PrecisionContext ctx;
  const CauchyFunction& F = half_markov();
  const HankelDecomposition& hd32 = half_markov_32();
  HankelDecomposition hd64 = hankel_decompose(F, 64, ctx);

  // A truncation is a corner submatrix of every larger one, so each
  // singular value can only grow with N.
  for (long n : {0L, 2L, 5L, 9L}) {
    REQUIRE(hd32.svd.sigma[n] <= hd64.svd.sigma[n] * (1 + tol2(-200)));
  }

  // Doubling the truncation moves the poles by no more than a modest
  // multiple of the fitted tail bound.
  AakApproximant a32 = aak_approximant(F, 4, hd32, ctx);
  AakApproximant a64 = aak_approximant(F, 4, hd64, ctx);
  REQUIRE(a32.poles.size() == 4);
  REQUIRE(a64.poles.size() == 4);
  Real bound = hd32.trunc.tail_bound * Real("1e3");
  for (const Complex& p : a32.poles) {
    Real dmin = Real(1L) / Real(0L);
    for (const Complex& q : a64.poles) dmin = min(dmin, abs(p - q));
    INFO("pole " << to_string(p.re, 8) << " moved " << to_string(dmin, 6)
                 << " allowed " << to_string(bound, 6));
    REQUIRE(dmin <= bound);
  }

  // Shared-decomposition and from-scratch routes agree.
  AakApproximant direct = aak_approximant(F, 4, 32, ctx);
  req_close(direct.sigma, a32.sigma, tol2(-250), "sigma via both routes");
}

TEST_CASE("outer factor: closed forms and resolution guards") {
  PrecisionContext ctx;

  SECTION("monomial has trivial outer part") {
    Poly v({Complex(), Complex(1L)});  // v = z
    std::vector<Complex> zs = {Complex(), Complex(Real("0.3"), Real("0.4")),
                               Complex(Real("0.99"))};
    for (const Complex& w : outer_factor(v, zs, ctx))
      req_close(w, Complex(1L), tol2(-240), "outer part of z");
  }

  SECTION("zero-free in the disk: outer equals v up to a phase") {
    Poly v = Poly::from_roots({Complex(2L, 1L), Complex(-3L), Complex(Real(0L), Real("1.7"))});
    Complex v0 = v(Complex());
    Complex phase = conj(v0) / abs(v0);
    std::vector<Complex> zs = {Complex(), Complex(Real("0.5")),
                               polar(Real(1L), Real("0.7")),
                               Complex(Real("-0.2"), Real("0.6"))};
    std::vector<Complex> w = outer_factor(v, zs, ctx);
    req_close(w[0], Complex(abs(v0)), tol2(-225), "w(0) = |v(0)|");
    for (size_t i = 0; i < zs.size(); ++i)
      req_close(w[i], v(zs[i]) * phase, tol2(-225), "w = v * phase");
  }

  SECTION("one root inside: reflected factor replaces it") {
    // v = (z - 0.3)(z - 2) has outer part -(1 - 0.3 z)(z - 2).
    Poly v = Poly::from_roots({Complex(Real("0.3")), Complex(2L)});
    auto outer = [](const Complex& z) {
      return -(Complex(1L) - Real("0.3") * z) * (z - Complex(2L));
    };
    std::vector<Complex> zs = {Complex(), Complex(Real(0L), Real("0.5")),
                               polar(Real(1L), Real("2.1"))};
    std::vector<Complex> w = outer_factor(v, zs, ctx);
    for (size_t i = 0; i < zs.size(); ++i)
      req_close(w[i], outer(zs[i]), tol2(-220), "reflected outer value");
    // |w| = |v| on the circle even though w != v anywhere.
    req_close(abs(w[2]), abs(v(zs[2])), tol2(-220), "boundary modulus");
  }

  SECTION("zeros on or crowding the circle are refused") {
    Poly on_circle = Poly::from_roots({Complex(1L)});
    REQUIRE_THROWS_AS(outer_factor(on_circle, {Complex()}, ctx), std::runtime_error);
    Poly crowding = Poly::from_roots({Complex(1 + tol2(-100))});
    REQUIRE_THROWS_AS(outer_factor(crowding, {Complex()}, ctx), std::runtime_error);
  }

  SECTION("bad inputs are rejected") {
    Poly v({Complex(), Complex(1L)});
    REQUIRE_THROWS_AS(outer_factor(Poly(), {Complex()}, ctx), std::invalid_argument);
    REQUIRE_THROWS_AS(outer_factor(v, {Complex(Real("1.5"))}, ctx), std::invalid_argument);
  }
}
