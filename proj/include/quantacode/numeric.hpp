// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace quantacode {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
/// Variable-precision real; precision is fixed process-wide by set_working_digits().
using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultWorkingDigits = 50;

/// Sets the number of significant decimal digits used for every Real created
/// afterwards. Not thread-safe: call before spawning workers.
void set_working_digits(unsigned digits);
unsigned working_digits() noexcept;

/// Reads QUANTACODE_PRECISION if set, otherwise returns `fallback`.
unsigned working_digits_from_env(unsigned fallback = kDefaultWorkingDigits);

inline Real to_real(const Rational& q) { return Real(q); }
inline Real to_real(const Integer& z) { return Real(z); }

/// ceil(log2(t)) for t >= 1, by bit length.
unsigned ceil_log2(std::uint64_t t) noexcept;

/// Scientific notation with `significant` digits, e.g. "6.40145699732e-03".
std::string format_sci(const Real& x, unsigned significant);
/// Fixed or scientific, whichever Boost picks for `significant` digits.
std::string format_general(const Real& x, unsigned significant);
/// "a/b", or "a" for integers.
std::string format_rational(const Rational& q);

/// Parses "0.7", "7/10", "1e-3", "-2.5E+4" exactly. Throws Error(InvalidInput).
Rational parse_rational(const std::string& text);

Real ln2();

}  // namespace quantacode
