// SPDX-License-Identifier: MIT
//
// Shared helpers for the Catch2 test suites.

#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "mera/complex.hpp"
#include "mera/real.hpp"

namespace mera::testing {

/// |a - b| <= tol, with a readable failure message.
inline void req_close(const Real& a, const Real& b, const Real& tol,
                      const std::string& what = "") {
  Real d = abs(a - b);
  INFO(what << " |" << to_string(a, 25) << " - " << to_string(b, 25)
            << "| = " << to_string(d, 6) << " tol " << to_string(tol, 6));
  REQUIRE(d <= tol);
}

inline void req_close(const Complex& a, const Complex& b, const Real& tol,
                      const std::string& what = "") {
  Real d = abs(a - b);
  INFO(what << " |" << to_string(a, 25) << " - " << to_string(b, 25)
            << "| = " << to_string(d, 6) << " tol " << to_string(tol, 6));
  REQUIRE(d <= tol);
}

/// Tolerance 2^e at face value.
inline Real tol2(long e) { return two_pow(e); }

/// Deterministic pseudo-random reals in [-1,1] (fixed seed, exact dyadic
/// values so runs are reproducible across platforms).
class TestRng {
 public:
  explicit TestRng(unsigned long long seed) : state_(seed) {}
  Real real() {
    return Real(static_cast<long>(next() >> 11)) / two_pow(52) - 1;
  }
  Complex cplx() {
    Real re = real();
    return Complex(re, real());
  }

 private:
  unsigned long long next() {
    // SplitMix64: exact, platform-independent.
    unsigned long long z = (state_ += 0x9E3779B97f4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  unsigned long long state_;
};

}  // namespace mera::testing
