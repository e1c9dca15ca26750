// SPDX-License-Identifier: MIT
//
// Error types shared across modules.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mera/complex.hpp"

namespace mera {

/// Thrown when rule doubling fails to stabilize a quadrature value before
/// the node-count cap; carries the best estimate achieved.
struct AccuracyError : std::runtime_error {
  std::vector<Complex> achieved;
  Real max_delta;
  AccuracyError(std::string what, std::vector<Complex> got, Real delta)
      : std::runtime_error(std::move(what)),
        achieved(std::move(got)),
        max_delta(std::move(delta)) {}
};

}  // namespace mera
