// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#include "quantacode/prob_model.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "quantacode/error.hpp"

namespace quantacode {

namespace mp = boost::multiprecision;

namespace {

std::vector<std::size_t> ascending_order(const std::vector<Rational>& probs) {
  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return probs[a] < probs[b]; });
  return order;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(item);
  if (!text.empty() && text.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<Rational> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw Error(ErrorCode::AlphabetTooSmall, "need at least 2 symbols, got " +
                                                 std::to_string(probs_.size()));
  }
  Rational sum = 0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i] <= 0) {
      throw Error(ErrorCode::NonPositiveProbability,
                  "p_" + std::to_string(i) + " = " + format_rational(probs_[i]));
    }
    sum += probs_[i];
  }
  if (sum != 1) {
    throw Error(ErrorCode::SumOutOfTolerance, "probabilities sum to " + format_rational(sum));
  }
  p_min_ = *std::min_element(probs_.begin(), probs_.end());

  denominator_ = 1;
  for (const auto& q : probs_) denominator_ = mp::lcm(denominator_, mp::denominator(q));
  scaled_.reserve(probs_.size());
  for (const auto& q : probs_) {
    scaled_.push_back(mp::numerator(q) * (denominator_ / mp::denominator(q)));
  }
  order_ = ascending_order(probs_);
}

ProbabilityVector parse_probability_vector(std::span<const std::string> items) {
  if (items.size() < 2) {
    throw Error(ErrorCode::AlphabetTooSmall,
                "need at least 2 probabilities, got " + std::to_string(items.size()));
  }
  std::vector<Rational> probs;
  probs.reserve(items.size());
  Rational sum = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    Rational q = parse_rational(items[i]);
    if (q <= 0) {
      throw Error(ErrorCode::NonPositiveProbability, "entry " + std::to_string(i) + " ('" +
                                                         items[i] + "') is not positive");
    }
    sum += q;
    probs.push_back(std::move(q));
  }
  if (sum != 1) {
    const Rational tolerance(1, 1000000000);
    if (mp::abs(sum - 1) >= tolerance) {
      throw Error(ErrorCode::SumOutOfTolerance,
                  "probabilities sum to " + format_general(to_real(sum), 12));
    }
    for (auto& q : probs) q /= sum;
  }
  return ProbabilityVector(std::move(probs));
}

ProbabilityVector parse_probability_vector(const std::string& comma_separated) {
  const auto parts = split_commas(comma_separated);
  return parse_probability_vector(std::span<const std::string>(parts));
}

FrequencyTable::FrequencyTable(std::vector<std::uint64_t> freqs, std::vector<std::size_t> order)
    : freqs_(std::move(freqs)), order_(std::move(order)) {
  const std::size_t m = freqs_.size();
  if (m < 2) throw Error(ErrorCode::InvalidTable, "a table needs at least 2 symbols");
  if (order_.empty()) {
    order_.resize(m);
    std::iota(order_.begin(), order_.end(), std::size_t{0});
  }
  if (order_.size() != m) throw Error(ErrorCode::InvalidTable, "order has the wrong length");
  std::vector<bool> seen(m, false);
  for (auto s : order_) {
    if (s >= m || seen[s]) throw Error(ErrorCode::InvalidTable, "order is not a permutation");
    seen[s] = true;
  }
  cum_.reserve(m);
  start_.assign(m, 0);
  for (auto s : order_) {
    const std::uint64_t f = freqs_[s];
    if (f == 0) {
      throw Error(ErrorCode::InvalidTable, "f_" + std::to_string(s) + " is zero");
    }
    if (f > std::numeric_limits<std::uint64_t>::max() / 2 - total_) {
      throw Error(ErrorCode::InvalidTable, "total frequency overflows 63 bits");
    }
    start_[s] = total_;
    total_ += f;
    cum_.push_back(total_);
  }
  width_bits_ = ceil_log2(total_);
}

FrequencyTable with_canonical_order(const ProbabilityVector& p, const FrequencyTable& table) {
  if (table.size() != p.size()) {
    throw Error(ErrorCode::DimensionMismatch, "table has " + std::to_string(table.size()) +
                                                  " symbols, source has " +
                                                  std::to_string(p.size()));
  }
  return FrequencyTable(table.freqs(), p.canonical_order());
}

ErrorProfile error_profile(const ProbabilityVector& p, const FrequencyTable& table) {
  if (table.size() != p.size()) {
    throw Error(ErrorCode::DimensionMismatch, "table has " + std::to_string(table.size()) +
                                                  " symbols, source has " +
                                                  std::to_string(p.size()));
  }
  ErrorProfile out;
  out.deltas.reserve(p.size());
  const Integer t = table.total();
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rational d = p[i] - Rational(Integer(table.freq(i)), t);
    if (mp::abs(d) > out.delta_star) out.delta_star = mp::abs(d);
    out.deltas.push_back(std::move(d));
  }
  out.ratio = out.delta_star / p.p_min();
  return out;
}

Integer scaled_error(const ProbabilityVector& p, std::span<const std::uint64_t> freqs,
                     std::uint64_t t) {
  if (freqs.size() != p.size()) {
    throw Error(ErrorCode::DimensionMismatch, "frequency count does not match alphabet");
  }
  Integer worst = 0;
  Integer e;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    e = p.scaled()[i] * t;
    e -= p.denominator() * freqs[i];
    if (e < 0) e = -e;
    if (e > worst) worst = e;
  }
  return worst;
}

Cumulative cumulative(const ProbabilityVector& p, const FrequencyTable& table) {
  if (table.size() != p.size()) {
    throw Error(ErrorCode::DimensionMismatch, "table has " + std::to_string(table.size()) +
                                                  " symbols, source has " +
                                                  std::to_string(p.size()));
  }
  Cumulative out;
  out.order = p.canonical_order();
  out.sums.reserve(p.size());
  std::uint64_t running = 0;
  for (auto s : out.order) {
    running += table.freq(s);
    out.sums.push_back(running);
  }
  return out;
}

unsigned register_width(std::uint64_t t) {
  if (t < 2) throw Error(ErrorCode::InvalidInput, "register width needs t >= 2");
  return ceil_log2(t);
}

unsigned register_width(const FrequencyTable& table) { return register_width(table.total()); }

std::uint64_t memory_cost(std::size_t m, unsigned width_bits) {
  return static_cast<std::uint64_t>(m) * width_bits;
}

void write_table(std::ostream& out, const FrequencyTable& table, const ProbabilityVector* p) {
  out << table.size() << ' ' << table.total() << ' ' << table.width_bits() << '\n';
  if (p != nullptr) {
    const auto profile = error_profile(*p, table);
    out << "# delta_star " << format_rational(profile.delta_star) << ' '
        << format_sci(to_real(profile.delta_star), 30) << '\n';
  }
  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto s = table.order()[k];
    out << s << ' ' << table.freq(s) << ' ' << table.cum()[k] << '\n';
  }
}

std::string table_to_string(const FrequencyTable& table, const ProbabilityVector* p) {
  std::ostringstream out;
  write_table(out, table, p);
  return out.str();
}

FrequencyTable read_table(std::istream& in) {
  auto fail = [](const std::string& why) -> FrequencyTable {
    throw Error(ErrorCode::InvalidTable, why);
  };
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    rows.push_back(line);
  }
  if (rows.empty()) return fail("empty table");

  std::istringstream header(rows.front());
  std::uint64_t m = 0, t = 0;
  unsigned w = 0;
  if (!(header >> m >> t >> w)) return fail("bad header line '" + rows.front() + "'");
  if (m < 2 || rows.size() != m + 1) return fail("expected " + std::to_string(m) + " symbol lines");

  std::vector<std::uint64_t> freqs(m, 0);
  std::vector<std::size_t> order;
  std::vector<std::uint64_t> sums;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    std::istringstream row(rows[k]);
    std::size_t s = 0;
    std::uint64_t f = 0, c = 0;
    if (!(row >> s >> f >> c)) return fail("bad symbol line '" + rows[k] + "'");
    if (s >= m) return fail("symbol index out of range in '" + rows[k] + "'");
    freqs[s] = f;
    order.push_back(s);
    sums.push_back(c);
  }
  FrequencyTable table(std::move(freqs), std::move(order));
  if (table.total() != t) return fail("header t does not match the frequencies");
  if (table.width_bits() != w) return fail("header W does not match ceil(log2 t)");
  if (table.cum() != sums) return fail("cumulative column is inconsistent");
  return table;
}

FrequencyTable table_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_table(in);
}

}  // namespace quantacode
