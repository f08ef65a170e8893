// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "quantacode/kappa.hpp"
#include "quantacode/prob_model.hpp"

namespace quantacode {

/// The table with the smallest delta* among all f >= 1 summing to t.
///
/// Floors t * p_i, hands the t - sum floor(t p_i) leftover units to the
/// largest remainders (lower index first on ties), then lifts any zero entry
/// to one by taking a unit from the donor whose error grows least. The result
/// always has delta* < 1/t and comes laid out in p's canonical order.
/// Throws DenominatorTooSmall when t < m.
FrequencyTable round_min_max(const ProbabilityVector& p, std::uint64_t t);

/// Brute force over every composition of t into m positive parts; first
/// minimum in lexicographic order wins. Limited to m <= 4, t <= 64
/// (InstanceTooLarge otherwise).
FrequencyTable exhaustive_best(const ProbabilityVector& p, std::uint64_t t);

struct Convergent {
  Integer numerator;
  Integer denominator;
};

/// Continued-fraction convergents a/q of x in (0, 1) with q <= max_q, in
/// increasing q. When two convergents share q = 1 only the closer is kept.
std::vector<Convergent> cf_convergents(const Rational& x, const Integer& max_q);

/// Partial quotients [a0; a1, a2, ...] of x, stopping once the convergent
/// denominator would exceed max_q.
std::vector<Integer> partial_quotients(const Rational& x, const Integer& max_q);

/// Heuristic for golden-ratio equivalence of a high-precision rational stand-in:
/// looks at the partial quotients whose convergents are still determined by
/// the stand-in (q <= sqrt(denominator) / 100) and reports whether the last
/// `tail` of them are all 1.
bool looks_golden_equivalent(const Rational& x, std::size_t tail = 20);

struct RecordEntry {
  std::uint64_t t = 0;
  std::vector<std::uint64_t> freqs;
  Rational delta_star;
  /// t^2 delta* for m = 2, t^(1 + 1/m) delta* otherwise.
  Real quality;
  bool beats_fact_constant = false;
};

struct ScanRow {
  std::uint64_t t = 0;
  /// max_i |t p_i - f_i| scaled by the common denominator B.
  Integer scaled_error;
  bool is_record = false;
  bool beats_fact_constant = false;
};

struct ScanOptions {
  /// Threshold for binary sources; m > 2 always uses m / (m + 1).
  Kappa kappa = Kappa::Generic;
  unsigned jobs = 1;
};

/// Result of scanning every t in [m, t_max] with round_min_max.
///
/// A record is a t whose t * delta* (the largest |t p_i - f_i|) is strictly
/// below that of every smaller t, i.e. a best simultaneous approximation.
/// For m = 2 these are the continued-fraction denominators of p_1. A t with
/// delta* = 0 ends the scan.
struct RecordScan {
  std::size_t m = 0;
  Integer denominator;
  Kappa kappa = Kappa::Generic;
  std::vector<ScanRow> rows;
  std::vector<RecordEntry> records;
  std::size_t rows_beating = 0;
  std::size_t records_beating = 0;
  bool terminated_exact = false;

  Rational delta_star(const ScanRow& row) const;
  Real quality(const ScanRow& row) const;
};

RecordScan record_scan(const ProbabilityVector& p, std::uint64_t t_max,
                       const ScanOptions& options = {});

/// Exact test of quality < m/(m+1) (m > 2) or t^2 delta* < kappa (m = 2),
/// with delta* = scaled_error / (t B).
bool beats_fact_constant(std::size_t m, std::uint64_t t, const Integer& scaled_error,
                         const Integer& denominator, Kappa kappa);

/// CSV: t,delta_star_decimal,quality_decimal,is_record,beats_fact_constant
/// with 30 significant digits.
void write_scan_csv(std::ostream& out, const RecordScan& scan, bool records_only = false);

enum class Objective { MinDelta, MinDivergence };

/// Best round_min_max table over t in [m, 2^W]; smallest t wins ties.
/// Throws WidthTooSmall when 2^W < m.
FrequencyTable best_table_under_width(const ProbabilityVector& p, unsigned width_bits,
                                      Objective objective, unsigned jobs = 1);

}  // namespace quantacode
