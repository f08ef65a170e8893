// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#include "quantacode/coder.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>

#include "quantacode/bounds.hpp"
#include "quantacode/error.hpp"

namespace quantacode {

namespace {

constexpr std::uint64_t kTop = std::uint64_t{1} << 40;
constexpr std::uint64_t kRegisterMask = (std::uint64_t{1} << kCoderRegisterBits) - 1;
constexpr std::uint64_t kLowTail = kTop - 1;
constexpr std::uint8_t kMagic[4] = {'Q', 'C', '0', '1'};

void check_table(const FrequencyTable& table) {
  if (table.total() > kCoderMaxTotal) {
    throw Error(ErrorCode::InvalidTable, "coder tables need t <= 2^24, got t = " +
                                             std::to_string(table.total()));
  }
}

}  // namespace

RangeEncoder::RangeEncoder(const FrequencyTable& table)
    : table_(&table), range_(kRegisterMask) {
  check_table(table);
}

void RangeEncoder::put(Symbol symbol) {
  if (symbol >= table_->size()) {
    throw Error(ErrorCode::SymbolOutOfRange, "symbol " + std::to_string(symbol) +
                                                 " with m = " + std::to_string(table_->size()));
  }
  const std::uint64_t r = range_ / table_->total();
  low_ += r * table_->interval_start(symbol);
  range_ = r * table_->freq(symbol);
  while (range_ < kTop) {
    range_ <<= 8;
    shift_low();
  }
}

void RangeEncoder::shift_low() {
  // Hold back 0xFF bytes until we know whether a carry reaches them.
  if ((low_ & kRegisterMask) < (std::uint64_t{0xFF} << 40) || (low_ >> kCoderRegisterBits) != 0) {
    const auto carry = static_cast<std::uint8_t>(low_ >> kCoderRegisterBits);
    std::uint8_t pending = cache_;
    do {
      // The very first cached byte is always zero: the interval starts in [0, 1).
      if (!leading_) out_.push_back(static_cast<std::uint8_t>(pending + carry));
      leading_ = false;
      pending = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<std::uint8_t>(low_ >> 40);
  }
  ++cache_size_;
  low_ = (low_ & kLowTail) << 8;
}

std::vector<std::uint8_t> RangeEncoder::finish() {
  for (int i = 0; i < 7; ++i) shift_low();
  return std::move(out_);
}

RangeDecoder::RangeDecoder(const FrequencyTable& table, std::span<const std::uint8_t> bytes)
    : table_(&table), in_(bytes), range_(kRegisterMask) {
  check_table(table);
  for (int i = 0; i < 6; ++i) code_ = (code_ << 8) | next_byte();
}

std::uint8_t RangeDecoder::next_byte() {
  if (pos_ >= in_.size()) throw Error(ErrorCode::CorruptStream, "stream ended early");
  return in_[pos_++];
}

Symbol RangeDecoder::get() {
  const std::uint64_t t = table_->total();
  const std::uint64_t r = range_ / t;
  const std::uint64_t v = code_ / r;
  if (v >= t) throw Error(ErrorCode::CorruptStream, "code value outside the table");
  const auto& cum = table_->cum();
  const auto k = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), v) - cum.begin());
  const auto symbol = static_cast<Symbol>(table_->order()[k]);
  const std::uint64_t f = table_->freq(symbol);
  code_ -= r * (cum[k] - f);
  range_ = r * f;
  while (range_ < kTop) {
    code_ = (code_ << 8) | next_byte();
    range_ <<= 8;
  }
  return symbol;
}

std::vector<std::uint8_t> encode(std::span<const Symbol> symbols, const FrequencyTable& table) {
  RangeEncoder enc(table);
  for (auto s : symbols) enc.put(s);
  return enc.finish();
}

std::vector<Symbol> decode(std::span<const std::uint8_t> bytes, std::size_t n,
                           const FrequencyTable& table) {
  RangeDecoder dec(table, bytes);
  std::vector<Symbol> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(dec.get());
  if (dec.bytes_consumed() != bytes.size()) {
    throw Error(ErrorCode::CorruptStream, "trailing bytes after the last symbol");
  }
  return out;
}

std::vector<std::uint8_t> encode_framed(std::span<const Symbol> symbols,
                                        const FrequencyTable& table) {
  const std::string text = table_to_string(table);
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  const auto len = static_cast<std::uint32_t>(text.size());
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(len >> shift));
  out.insert(out.end(), text.begin(), text.end());
  const auto n = static_cast<std::uint64_t>(symbols.size());
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(n >> shift));
  const auto payload = encode(symbols, table);
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

FramedStream decode_framed(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 16 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw Error(ErrorCode::CorruptStream, "missing QC01 header");
  }
  std::size_t pos = 4;
  std::uint32_t len = 0;
  for (int i = 0; i < 4; ++i) len = (len << 8) | bytes[pos++];
  if (bytes.size() < pos + len + 8) throw Error(ErrorCode::CorruptStream, "truncated header");
  const std::string text(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                         bytes.begin() + static_cast<std::ptrdiff_t>(pos + len));
  pos += len;
  std::uint64_t n = 0;
  for (int i = 0; i < 8; ++i) n = (n << 8) | bytes[pos++];
  FrequencyTable table = table_from_string(text);
  auto symbols = decode(bytes.subspan(pos), static_cast<std::size_t>(n), table);
  return {std::move(table), std::move(symbols)};
}

std::vector<Symbol> sample_symbols(const ProbabilityVector& p, std::size_t n, std::uint64_t seed) {
  std::vector<double> cdf;
  double acc = 0;
  for (const auto& q : p.probs()) {
    acc += q.convert_to<double>();
    cdf.push_back(acc);
  }
  cdf.back() = 1.0;
  std::mt19937_64 rng(seed);
  std::vector<Symbol> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const auto k = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    out.push_back(static_cast<Symbol>(std::min<std::ptrdiff_t>(k, static_cast<std::ptrdiff_t>(cdf.size()) - 1)));
  }
  return out;
}

RateReport measure_rate(const ProbabilityVector& p, const FrequencyTable& table, std::size_t n,
                        std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "n must be at least 1");
  if (table.size() != p.size()) {
    throw Error(ErrorCode::DimensionMismatch, "table and source disagree on m");
  }
  const auto symbols = sample_symbols(p, n, seed);
  const auto bytes = encode(symbols, table);
  const auto back = decode(bytes, n, table);

  std::vector<std::uint64_t> counts(p.size(), 0);
  for (auto s : symbols) ++counts[s];

  RateReport r;
  r.n = n;
  r.total_bits = static_cast<std::uint64_t>(bytes.size()) * 8;
  r.rate = static_cast<double>(r.total_bits) / static_cast<double>(n);
  r.lossless = back == symbols;

  const double t = static_cast<double>(table.total());
  double self_info = 0, h = 0, sum = 0, sum_sq = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i].convert_to<double>();
    const double c = static_cast<double>(counts[i]);
    const double info = -std::log2(pi);
    const double log_ratio = std::log2(pi * t / static_cast<double>(table.freq(i)));
    self_info += c * info;
    h += pi * info;
    sum += c * log_ratio;
    sum_sq += c * log_ratio * log_ratio;
  }
  const double nd = static_cast<double>(n);
  r.entropy_bits = self_info / nd;
  r.source_entropy_bits = h;
  r.divergence_bits = kl_divergence(p, table).bits.convert_to<double>();
  r.excess = r.rate - r.entropy_bits;
  const double mean = sum / nd;
  const double var = std::max(0.0, sum_sq / nd - mean * mean);
  r.std_error = std::sqrt(var / nd);
  return r;
}

void write_rate_csv(std::ostream& out, const RateReport& r) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << "n,total_bits,rate_bits,entropy_bits,source_entropy_bits,divergence_bits,excess_bits,"
         "std_error,lossless\n"
      << std::setprecision(12) << r.n << ',' << r.total_bits << ',' << r.rate << ','
      << r.entropy_bits << ',' << r.source_entropy_bits << ',' << r.divergence_bits << ','
      << r.excess << ',' << r.std_error << ',' << (r.lossless ? 1 : 0) << '\n';
  out.flags(flags);
  out.precision(prec);
}

}  // namespace quantacode
