// SPDX-License-Identifier: MIT
//
// Iterative radix-2 complex FFT at working precision (sizes must be
// powers of two).  Used for periodic log-data -> Fourier coefficient
// conversions on circles.

#pragma once

#include <stdexcept>
#include <vector>

#include "mera/complex.hpp"

namespace mera {

namespace detail {
inline bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}

/// In-place FFT: a[k] <- sum_j a[j] exp(-2 pi i j k / N) (sign=-1, forward)
/// or the conjugate kernel with 1/N scaling (sign=+1, inverse).
inline void fft(std::vector<Complex>& a, int sign) {
  const size_t n = a.size();
  if (!detail::is_pow2(n)) throw std::invalid_argument("fft: size must be a power of 2");
  if (n == 1) return;
  // Bit reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  Real two_pi = 2 * pi();
  for (size_t len = 2; len <= n; len <<= 1) {
    Real ang = (sign < 0 ? -two_pi : two_pi) / static_cast<long>(len);
    Complex wl = polar(Real(1), ang);
    for (size_t i = 0; i < n; i += len) {
      Complex w(1L);
      for (size_t j = 0; j < len / 2; ++j) {
        Complex u = a[i + j];
        Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (sign > 0) {
    for (Complex& z : a) z /= static_cast<long>(n);
  }
}

inline std::vector<Complex> fft_forward(std::vector<Complex> a) {
  fft(a, -1);
  return a;
}
inline std::vector<Complex> fft_inverse(std::vector<Complex> a) {
  fft(a, +1);
  return a;
}

}  // namespace mera
