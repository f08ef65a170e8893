// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#include "quantacode/numeric.hpp"

#include <bit>
#include <cctype>
#include <cstdlib>
#include <sstream>

#include "quantacode/error.hpp"

namespace quantacode {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NonPositiveProbability: return "NonPositiveProbability";
    case ErrorCode::SumOutOfTolerance: return "SumOutOfTolerance";
    case ErrorCode::AlphabetTooSmall: return "AlphabetTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::DenominatorTooSmall: return "DenominatorTooSmall";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::WidthTooSmall: return "WidthTooSmall";
    case ErrorCode::ZeroFrequency: return "ZeroFrequency";
    case ErrorCode::RatioNotLessThanOne: return "RatioNotLessThanOne";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::AlphabetNotMary: return "AlphabetNotMary";
    case ErrorCode::NonPositiveTarget: return "NonPositiveTarget";
    case ErrorCode::KappaMissing: return "KappaMissing";
    case ErrorCode::TargetUnachievableWithinScan: return "TargetUnachievableWithinScan";
    case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::CorruptStream: return "CorruptStream";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

unsigned g_working_digits = kDefaultWorkingDigits;

// Boost's own MPFR default is 20 digits; raise it before any Real exists.
const bool g_precision_initialized = [] {
  Real::default_precision(kDefaultWorkingDigits);
  return true;
}();

}  // namespace

void set_working_digits(unsigned digits) {
  if (digits < 20) {
    throw Error(ErrorCode::InvalidInput, "working precision must be at least 20 digits");
  }
  g_working_digits = digits;
  Real::default_precision(digits);
}

unsigned working_digits() noexcept { return g_working_digits; }

unsigned working_digits_from_env(unsigned fallback) {
  const char* env = std::getenv("QUANTACODE_PRECISION");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || v == 0 || v > 100000) {
    throw Error(ErrorCode::InvalidInput, "QUANTACODE_PRECISION must be a positive integer");
  }
  return static_cast<unsigned>(v);
}

unsigned ceil_log2(std::uint64_t t) noexcept {
  if (t <= 1) return 0;
  return static_cast<unsigned>(std::bit_width(t - 1));
}

std::string format_sci(const Real& x, unsigned significant) {
  return x.str(static_cast<std::streamsize>(significant == 0 ? 1 : significant - 1),
               std::ios_base::scientific);
}

std::string format_general(const Real& x, unsigned significant) {
  return x.str(static_cast<std::streamsize>(significant));
}

std::string format_rational(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) {
    return boost::multiprecision::numerator(q).str();
  }
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

namespace {

Integer pow10(unsigned e) {
  Integer r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

[[noreturn]] void bad_number(const std::string& text) {
  throw Error(ErrorCode::InvalidInput, "not a number: '" + text + "'");
}

Rational parse_decimal(const std::string& text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  Integer mantissa = 0;
  long long exponent = 0;
  std::size_t digits = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    mantissa = mantissa * 10 + (text[pos] - '0');
    ++pos;
    ++digits;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      mantissa = mantissa * 10 + (text[pos] - '0');
      --exponent;
      ++pos;
      ++digits;
    }
  }
  if (digits == 0) bad_number(text);
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    const std::string tail = text.substr(pos);
    if (tail.empty()) bad_number(text);
    std::size_t used = 0;
    long long e = 0;
    try {
      e = std::stoll(tail, &used);
    } catch (const std::exception&) {
      bad_number(text);
    }
    if (used != tail.size() || e > 10000 || e < -10000) bad_number(text);
    exponent += e;
    pos = text.size();
  }
  if (pos != text.size()) bad_number(text);
  if (negative) mantissa = -mantissa;
  if (exponent >= 0) return Rational(mantissa * pow10(static_cast<unsigned>(exponent)));
  return Rational(mantissa, pow10(static_cast<unsigned>(-exponent)));
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) bad_number(raw);
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_decimal(text);
  const Rational num = parse_decimal(trim(text.substr(0, slash)));
  const Rational den = parse_decimal(trim(text.substr(slash + 1)));
  if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator in '" + raw + "'");
  return num / den;
}

Real ln2() { return boost::multiprecision::log(Real(2)); }

}  // namespace quantacode
