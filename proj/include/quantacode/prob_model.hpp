// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quantacode/numeric.hpp"

namespace quantacode {

/// Exact source distribution p_1..p_m.
///
/// Besides the rationals themselves the vector keeps them over one common
/// denominator B, so that p_i = scaled()[i] / B. The approximation routines
/// work on these integers: t * p_i - f_i = (t * a_i - f_i * B) / B.
class ProbabilityVector {
 public:
  /// Requires m >= 2, every p_i > 0 and an exact sum of 1.
  explicit ProbabilityVector(std::vector<Rational> probs);

  std::size_t size() const noexcept { return probs_.size(); }
  const std::vector<Rational>& probs() const noexcept { return probs_; }
  const Rational& operator[](std::size_t i) const { return probs_[i]; }
  const Rational& p_min() const noexcept { return p_min_; }

  const Integer& denominator() const noexcept { return denominator_; }
  const std::vector<Integer>& scaled() const noexcept { return scaled_; }

  /// Symbol indices by ascending probability, ties by ascending index.
  const std::vector<std::size_t>& canonical_order() const noexcept { return order_; }

 private:
  std::vector<Rational> probs_;
  Rational p_min_;
  Integer denominator_;
  std::vector<Integer> scaled_;
  std::vector<std::size_t> order_;
};

/// Accepts decimal ("0.7", "1e-3") or fraction ("7/10") strings. A raw sum
/// within 1e-9 of one is renormalized exactly; anything further off throws
/// SumOutOfTolerance.
ProbabilityVector parse_probability_vector(std::span<const std::string> items);
/// Comma-separated form of the above, e.g. "0.7,0.2,0.1".
ProbabilityVector parse_probability_vector(const std::string& comma_separated);

/// Integer frequencies f_i with denominator t = sum f_i, laid out in a fixed
/// symbol order for cumulative coding.
class FrequencyTable {
 public:
  /// `order` is a permutation of symbol indices (identity when empty).
  explicit FrequencyTable(std::vector<std::uint64_t> freqs, std::vector<std::size_t> order = {});

  std::size_t size() const noexcept { return freqs_.size(); }
  std::uint64_t total() const noexcept { return total_; }
  unsigned width_bits() const noexcept { return width_bits_; }

  /// Indexed by symbol.
  const std::vector<std::uint64_t>& freqs() const noexcept { return freqs_; }
  std::uint64_t freq(std::size_t symbol) const { return freqs_.at(symbol); }

  const std::vector<std::size_t>& order() const noexcept { return order_; }
  /// Inclusive prefix sums along order(); cum().back() == total().
  const std::vector<std::uint64_t>& cum() const noexcept { return cum_; }
  /// Start of `symbol`'s interval [start, start + f) in [0, t).
  std::uint64_t interval_start(std::size_t symbol) const { return start_.at(symbol); }

  friend bool operator==(const FrequencyTable& a, const FrequencyTable& b) {
    return a.freqs_ == b.freqs_ && a.order_ == b.order_;
  }

 private:
  std::vector<std::uint64_t> freqs_;
  std::vector<std::size_t> order_;
  std::vector<std::uint64_t> cum_;
  std::vector<std::uint64_t> start_;
  std::uint64_t total_ = 0;
  unsigned width_bits_ = 0;
};

/// Same frequencies, re-laid out in p's canonical order.
FrequencyTable with_canonical_order(const ProbabilityVector& p, const FrequencyTable& table);

struct ErrorProfile {
  std::vector<Rational> deltas;  // p_i - f_i/t
  Rational delta_star;
  Rational ratio;                // delta_star / p_min
};

ErrorProfile error_profile(const ProbabilityVector& p, const FrequencyTable& table);

/// max_i |t p_i - f_i| * B as an integer; t * delta_star = scaled_error / B.
Integer scaled_error(const ProbabilityVector& p, std::span<const std::uint64_t> freqs,
                     std::uint64_t t);

struct Cumulative {
  std::vector<std::size_t> order;
  std::vector<std::uint64_t> sums;
};

/// Canonical (ascending-p, index tie-break) order and inclusive prefix sums.
Cumulative cumulative(const ProbabilityVector& p, const FrequencyTable& table);

/// ceil(log2 t); requires t >= 2.
unsigned register_width(std::uint64_t t);
unsigned register_width(const FrequencyTable& table);
std::uint64_t memory_cost(std::size_t m, unsigned width_bits);

/// Text format:
///   m t W
///   # delta_star <fraction> <decimal>      (only when p is given)
///   symbol_index f_i s_i                   (one line per symbol, canonical order)
void write_table(std::ostream& out, const FrequencyTable& table,
                 const ProbabilityVector* p = nullptr);
std::string table_to_string(const FrequencyTable& table, const ProbabilityVector* p = nullptr);
FrequencyTable read_table(std::istream& in);
FrequencyTable table_from_string(const std::string& text);

}  // namespace quantacode
