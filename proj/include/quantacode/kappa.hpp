// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "quantacode/numeric.hpp"

namespace quantacode {

/// Binary approximation constant: 5^(-1/2) for sources equivalent to the
/// golden ratio conjugate, 2^(-3/2) otherwise.
enum class Kappa { Golden, Generic };

/// kappa^2 is rational (1/5 or 1/8), which lets threshold tests stay exact.
inline Rational kappa_squared(Kappa k) {
  return k == Kappa::Golden ? Rational(1, 5) : Rational(1, 8);
}

inline Real kappa_value(Kappa k) { return boost::multiprecision::sqrt(Real(kappa_squared(k))); }

inline const char* kappa_name(Kappa k) { return k == Kappa::Golden ? "golden" : "generic"; }

}  // namespace quantacode
