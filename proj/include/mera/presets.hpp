// SPDX-License-Identifier: MIT
//
// Named example functions used by the CLI and the test suites.  Presets
// are built lazily so every numeric literal is evaluated at the caller's
// working precision.

#pragma once

#include <string>
#include <vector>

#include "mera/model.hpp"

namespace mera {

inline std::vector<std::string> preset_names() {
  return {"markov-arcsine", "markov-half", "cos-weight", "paper-sec8"};
}

/// Resolve a preset by name.
///  - markov-arcsine: arcsine distribution on [-1,1] (Markov function 1/w).
///  - markov-half:    arcsine distribution on [-1/2,1/2].
///  - cos-weight:     smooth positive density 2+cos(t) against omega on [-1,1].
///  - paper-sec8:     two-piece complex density on [-0.7,0.4] plus the
///                    rational term 1/(120 (z-0.7-0.2i)^6).
inline CauchyFunction preset(const std::string& name,
                             const PrecisionContext& ctx = {}) {
  if (name == "markov-arcsine") {
    MeasureSpec ms;
    ms.c = Real(-1);
    ms.d = Real(1);
    ms.pieces.push_back({ms.c, ms.d, Expr::parse("1")});
    return CauchyFunction::make(std::move(ms), {}, ctx);
  }
  if (name == "markov-half") {
    MeasureSpec ms;
    ms.c = Real("-0.5");
    ms.d = Real("0.5");
    ms.pieces.push_back({ms.c, ms.d, Expr::parse("1")});
    return CauchyFunction::make(std::move(ms), {}, ctx);
  }
  if (name == "cos-weight") {
    MeasureSpec ms;
    ms.c = Real(-1);
    ms.d = Real(1);
    ms.pieces.push_back({ms.c, ms.d, Expr::parse("2+cos(t)")});
    return CauchyFunction::make(std::move(ms), {}, ctx);
  }
  if (name == "paper-sec8") {
    MeasureSpec ms;
    ms.c = Real("-0.7");
    ms.d = Real("0.4");
    // Densities are stated against dt/sqrt((t-c)(d-t)) = pi * d(omega).
    ms.pieces.push_back({ms.c, Real(0), Expr::parse("7*pi*exp(i*t)")});
    ms.pieces.push_back({Real(0), ms.d, Expr::parse("pi*(1+i*t)")});
    Complex eta(Real("0.7"), Real("0.2"));
    Poly q = Poly::from_roots(std::vector<Complex>(6, eta));
    Poly p = Poly::constant(Complex(Real(1) / 120));
    return CauchyFunction::make(std::move(ms),
                                RationalPart::make(std::move(p), std::move(q), ctx), ctx);
  }
  throw std::invalid_argument("unknown preset \"" + name + "\"");
}

}  // namespace mera
