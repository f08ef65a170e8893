// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string_view>

#include "quantacode/prob_model.hpp"

namespace quantacode {

/// Decimal digits of the rational stand-ins for irrational probabilities.
/// A scan up to t_max is unaffected by truncation while t_max^2 < 10^digits.
inline constexpr unsigned kSurrogateDigits = 100;

/// floor(x * 10^digits) / 10^digits for x = (sqrt 5 - 1) / 2.
Rational golden_surrogate(unsigned digits = kSurrogateDigits);
/// Same truncation of sqrt 2 - 1.
Rational silver_surrogate(unsigned digits = kSurrogateDigits);
/// Same truncation of sqrt(radicand).
Rational sqrt_surrogate(unsigned radicand, unsigned digits = kSurrogateDigits);

/// (psi, 1 - psi).
ProbabilityVector golden_source(unsigned digits = kSurrogateDigits);
/// (sqrt2 - 1, 2 - sqrt2).
ProbabilityVector silver_source(unsigned digits = kSurrogateDigits);
/// (sqrt2 - 1, (sqrt3 - 1)/2, 5/2 - sqrt2 - sqrt3/2): three entries that are
/// linearly independent over Q together with 1.
ProbabilityVector trio_source(unsigned digits = kSurrogateDigits);

/// "golden", "silver" or "trio"; nullopt for anything else.
std::optional<ProbabilityVector> preset_source(std::string_view name);

}  // namespace quantacode
