// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace quantacode {

enum class ErrorCode {
  InvalidInput,
  NonPositiveProbability,
  SumOutOfTolerance,
  AlphabetTooSmall,
  DimensionMismatch,
  InvalidTable,
  DenominatorTooSmall,
  InstanceTooLarge,
  WidthTooSmall,
  ZeroFrequency,
  RatioNotLessThanOne,
  PreconditionViolated,
  AlphabetNotMary,
  NonPositiveTarget,
  KappaMissing,
  TargetUnachievableWithinScan,
  SymbolOutOfRange,
  CorruptStream,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace quantacode
