// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "quantacode/prob_model.hpp"

namespace quantacode {

using Symbol = std::uint32_t;

/// Range coder over the table's cumulative intervals.
///
/// The interval register is 48 bits wide, `low` carries one extra bit for
/// carry propagation, and bytes go out big-endian. After every
/// renormalization range >= 2^40, so any table with t <= 2^24 keeps at least
/// 16 bits of resolution per symbol.
inline constexpr unsigned kCoderRegisterBits = 48;
inline constexpr std::uint64_t kCoderMaxTotal = std::uint64_t{1} << 24;

class RangeEncoder {
 public:
  explicit RangeEncoder(const FrequencyTable& table);

  /// Throws SymbolOutOfRange for symbol >= m.
  void put(Symbol symbol);
  /// Flushes the register (48 bits) and returns the stream.
  std::vector<std::uint8_t> finish();

  std::uint64_t range() const noexcept { return range_; }

 private:
  void shift_low();

  const FrequencyTable* table_;
  std::uint64_t low_ = 0;
  std::uint64_t range_;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  bool leading_ = true;
  std::vector<std::uint8_t> out_;
};

class RangeDecoder {
 public:
  RangeDecoder(const FrequencyTable& table, std::span<const std::uint8_t> bytes);

  /// Throws CorruptStream when the stream cannot have come from the encoder.
  Symbol get();

  std::uint64_t range() const noexcept { return range_; }
  std::size_t bytes_consumed() const noexcept { return pos_; }

 private:
  std::uint8_t next_byte();

  const FrequencyTable* table_;
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::uint64_t code_ = 0;
  std::uint64_t range_;
};

std::vector<std::uint8_t> encode(std::span<const Symbol> symbols, const FrequencyTable& table);
std::vector<Symbol> decode(std::span<const std::uint8_t> bytes, std::size_t n,
                           const FrequencyTable& table);

/// Self-describing stream: "QC01", u32 BE length + table text, u64 BE n,
/// then the payload.
std::vector<std::uint8_t> encode_framed(std::span<const Symbol> symbols,
                                        const FrequencyTable& table);

struct FramedStream {
  FrequencyTable table;
  std::vector<Symbol> symbols;
};

FramedStream decode_framed(std::span<const std::uint8_t> bytes);

/// n iid draws from p (mt19937_64, inverse CDF in symbol-index order).
std::vector<Symbol> sample_symbols(const ProbabilityVector& p, std::size_t n, std::uint64_t seed);

/// Coder measurement against the model.
///
/// `entropy_bits` is the sample's own self-information under p,
/// (1/n) sum -log2 p(x_k), so `excess = rate - entropy_bits` carries no
/// sampling noise from the draw itself: it is the sample mean of
/// log2(p(x)/p_hat(x)) plus coder overhead, and tends to D(p || f/t) in bits.
/// `std_error` is the standard error of that sample mean.
struct RateReport {
  std::size_t n = 0;
  std::uint64_t total_bits = 0;
  double rate = 0;
  double entropy_bits = 0;
  double source_entropy_bits = 0;  // H(p)
  double divergence_bits = 0;      // exact D(p || f/t)
  double excess = 0;
  double std_error = 0;
  bool lossless = false;
};

/// Draws n symbols, encodes, decodes, and reports the measured rate.
RateReport measure_rate(const ProbabilityVector& p, const FrequencyTable& table, std::size_t n,
                        std::uint64_t seed);

void write_rate_csv(std::ostream& out, const RateReport& report);

}  // namespace quantacode
