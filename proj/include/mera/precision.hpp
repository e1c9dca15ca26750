// SPDX-License-Identifier: MIT
//
// Thread-local working precision for all multiprecision arithmetic.
//
// Every arithmetic operation in this library produces its result at the
// precision installed for the current thread; values themselves remember
// the precision they were created with.  PrecisionScope installs a
// precision for the lifetime of a lexical block (RAII).

#pragma once

#include <mpfr.h>

namespace mera {

namespace detail {
inline long& tl_precision() {
  thread_local long bits = 256;
  return bits;
}
}  // namespace detail

/// Significand size (in bits) used for results created on this thread.
inline long current_precision() { return detail::tl_precision(); }

/// Install a working precision for this thread.  Values below 53 bits are
/// clamped to 53 (double-precision floor).
inline void set_current_precision(long bits) {
  detail::tl_precision() = bits < 53 ? 53 : bits;
}

/// RAII guard that installs a working precision for the current thread and
/// restores the previous one on scope exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(long bits) : saved_(current_precision()) {
    set_current_precision(bits);
  }
  ~PrecisionScope() { set_current_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  long saved_;
};

}  // namespace mera
