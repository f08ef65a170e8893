// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#include "quantacode/presets.hpp"

namespace quantacode {

namespace mp = boost::multiprecision;

namespace {
Integer pow10(unsigned e) { return mp::pow(Integer(10), e); }
}  // namespace

Rational sqrt_surrogate(unsigned radicand, unsigned digits) {
  const Integer scale = pow10(digits);
  return Rational(mp::sqrt(Integer(radicand) * scale * scale), scale);
}

Rational golden_surrogate(unsigned digits) {
  const Integer scale = pow10(digits);
  const Integer root5 = mp::sqrt(Integer(5) * scale * scale);
  return Rational(root5 - scale, 2 * scale);
}

Rational silver_surrogate(unsigned digits) { return sqrt_surrogate(2, digits) - 1; }

ProbabilityVector golden_source(unsigned digits) {
  const Rational psi = golden_surrogate(digits);
  return ProbabilityVector({psi, 1 - psi});
}

ProbabilityVector silver_source(unsigned digits) {
  const Rational a = silver_surrogate(digits);
  return ProbabilityVector({a, 1 - a});
}

ProbabilityVector trio_source(unsigned digits) {
  const Rational a = sqrt_surrogate(2, digits) - 1;
  const Rational b = (sqrt_surrogate(3, digits) - 1) / 2;
  return ProbabilityVector({a, b, 1 - a - b});
}

std::optional<ProbabilityVector> preset_source(std::string_view name) {
  if (name == "golden") return golden_source();
  if (name == "silver") return silver_source();
  if (name == "trio") return trio_source();
  return std::nullopt;
}

}  // namespace quantacode
