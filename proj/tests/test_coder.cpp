// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "quantacode/approx.hpp"
#include "quantacode/coder.hpp"
#include "quantacode/error.hpp"
#include "test_support.hpp"

using namespace quantacode;

namespace {

std::vector<Symbol> random_symbols(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::vector<Symbol> out(n);
  for (auto& s : out) s = static_cast<Symbol>(rng() % m);
  return out;
}

FrequencyTable random_table(std::mt19937_64& rng, std::size_t m, std::uint64_t max_f) {
  std::vector<std::uint64_t> f(m);
  for (auto& x : f) x = 1 + rng() % max_f;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  return FrequencyTable(f, order);
}

double self_information_bits(const std::vector<Symbol>& xs, const FrequencyTable& table) {
  double bits = 0;
  for (auto s : xs) {
    bits -= std::log2(static_cast<double>(table.freq(s)) / static_cast<double>(table.total()));
  }
  return bits;
}

}  // namespace

TEST_CASE("empty and single-symbol streams") {
  const FrequencyTable table({3, 1});
  const auto bytes = encode(std::vector<Symbol>{}, table);
  CHECK(bytes.size() <= 7);
  CHECK(decode(bytes, 0, table).empty());
  for (Symbol s : {0u, 1u}) {
    const std::vector<Symbol> one{s};
    CHECK(decode(encode(one, table), 1, table) == one);
  }
}

TEST_CASE("degenerate model costs one bit per symbol") {
  const FrequencyTable table({1, 1});
  const std::vector<Symbol> xs(10000, 0);
  const auto bytes = encode(xs, table);
  const double rate = 8.0 * static_cast<double>(bytes.size()) / 1e4;
  CHECK(rate >= 1.0);
  CHECK(rate <= 1.0 + 56.0 / 1e4);
  CHECK(decode(bytes, xs.size(), table) == xs);
}

TEST_CASE("random roundtrips") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 2 + rng() % 300;
    const std::uint64_t max_f = trial % 3 == 0 ? 1 : (trial % 3 == 1 ? 50 : 40000);
    const auto table = random_table(rng, m, max_f);
    const std::size_t n = trial == 0 ? 100000 : rng() % 5000;
    const auto xs = random_symbols(rng, n, m);
    const auto bytes = encode(xs, table);
    CHECK(decode(bytes, n, table) == xs);
    // Code length stays within the flush allowance of the ideal length.
    const double ideal = self_information_bits(xs, table);
    const double got = 8.0 * static_cast<double>(bytes.size());
    CHECK(got <= ideal + 56 + 1e-4 * static_cast<double>(n));
  }
}

TEST_CASE("skewed and maximal tables roundtrip") {
  std::mt19937_64 rng(2);
  const FrequencyTable skewed({(std::uint64_t{1} << 24) - 1, 1});
  std::vector<Symbol> xs(20000, 0);
  for (int i = 0; i < 50; ++i) xs[rng() % xs.size()] = 1;
  CHECK(decode(encode(xs, skewed), xs.size(), skewed) == xs);
  CHECK_THROWS_AS(RangeEncoder(FrequencyTable({std::uint64_t{1} << 24, 1})), Error);
}

TEST_CASE("encoder and decoder move in lockstep") {
  std::mt19937_64 rng(3);
  const auto table = random_table(rng, 17, 1000);
  const auto xs = random_symbols(rng, 5000, 17);
  RangeEncoder enc(table);
  std::vector<std::uint64_t> ranges;
  for (auto s : xs) {
    enc.put(s);
    CHECK(enc.range() >= (std::uint64_t{1} << 40));
    ranges.push_back(enc.range());
  }
  const auto bytes = enc.finish();
  RangeDecoder dec(table, bytes);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    CHECK(dec.get() == xs[k]);
    CHECK(dec.range() == ranges[k]);
  }
  CHECK(dec.bytes_consumed() == bytes.size());
}

TEST_CASE("coder errors") {
  const FrequencyTable table({2, 1, 1});
  try {
    encode(std::vector<Symbol>{0, 3}, table);
    FAIL("expected SymbolOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SymbolOutOfRange);
  }
  std::mt19937_64 rng(4);
  const auto xs = random_symbols(rng, 1000, 3);
  auto bytes = encode(xs, table);
  auto truncated = bytes;
  truncated.resize(bytes.size() / 2);
  CHECK_THROWS_AS(decode(truncated, xs.size(), table), Error);
  auto padded = bytes;
  padded.push_back(0);
  CHECK_THROWS_AS(decode(padded, xs.size(), table), Error);
  CHECK_THROWS_AS(decode(std::vector<std::uint8_t>{1, 2}, 1, table), Error);
}

TEST_CASE("framed streams") {
  std::mt19937_64 rng(5);
  const auto p = testing::random_source(rng, 5, 100);
  const auto table = round_min_max(p, 1000);
  const auto xs = random_symbols(rng, 3000, 5);
  const auto bytes = encode_framed(xs, table);
  CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "QC01");
  const auto back = decode_framed(bytes);
  CHECK(back.table == table);
  CHECK(back.symbols == xs);
  auto bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(decode_framed(bad), Error);
  CHECK_THROWS_AS(decode_framed(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 20)),
                  Error);
}

TEST_CASE("output is deterministic") {
  std::mt19937_64 rng(6);
  const auto table = random_table(rng, 40, 300);
  const auto xs = random_symbols(rng, 20000, 40);
  CHECK(encode(xs, table) == encode(xs, table));
  CHECK(sample_symbols(parse_probability_vector("0.7,0.2,0.1"), 1000, 9) ==
        sample_symbols(parse_probability_vector("0.7,0.2,0.1"), 1000, 9));
  CHECK(sample_symbols(parse_probability_vector("0.7,0.2,0.1"), 1000, 9) !=
        sample_symbols(parse_probability_vector("0.7,0.2,0.1"), 1000, 10));
}

TEST_CASE("sampling follows p") {
  const auto p = parse_probability_vector("0.7,0.2,0.1");
  const auto xs = sample_symbols(p, 200000, 11);
  std::array<double, 3> counts{};
  for (auto s : xs) counts[s] += 1;
  const std::array<double, 3> want{0.7, 0.2, 0.1};
  for (std::size_t i = 0; i < 3; ++i) {
    const double sigma = std::sqrt(want[i] * (1 - want[i]) / 200000);
    CHECK(std::abs(counts[i] / 200000 - want[i]) < 5 * sigma);
  }
}

TEST_CASE("measure_rate examples") {
  const std::size_t n = 1000000;
  SUBCASE("uniform exact model") {
    const auto r = measure_rate(parse_probability_vector("1/2,1/2"), FrequencyTable({1, 1}), n, 1);
    CHECK(r.lossless);
    CHECK(r.excess <= 1e-4);
    CHECK(r.excess >= 0);
    CHECK(r.rate == doctest::Approx(static_cast<double>(r.total_bits) / n));
  }
  SUBCASE("binary source, uniform table") {
    const auto r = measure_rate(parse_probability_vector("7/10,3/10"), FrequencyTable({1, 1}), n, 2);
    CHECK(r.lossless);
    CHECK(std::abs(r.excess - 0.118709100769307) <= 0.005);
    CHECK(r.divergence_bits == doctest::Approx(0.118709100769307).epsilon(1e-12));
    CHECK(r.source_entropy_bits == doctest::Approx(0.881290899230693).epsilon(1e-12));
  }
  SUBCASE("three symbols, exact table") {
    const auto p = parse_probability_vector("7/10,2/10,1/10");
    const auto r = measure_rate(p, round_min_max(p, 10), n, 3);
    CHECK(r.lossless);
    CHECK(r.excess <= 1e-3);
    CHECK(r.excess <= (48.0 + 8.0) / n);
  }
  CHECK_THROWS_AS(measure_rate(parse_probability_vector("1/2,1/2"), FrequencyTable({1, 1}), 0, 1),
                  Error);
  CHECK_THROWS_AS(
      measure_rate(parse_probability_vector("1/2,1/2"), FrequencyTable({1, 1, 1}), 10, 1), Error);
}

TEST_CASE("measured excess tracks the divergence") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t m = 2 + rng() % 6;
    const auto p = testing::random_source(rng, m, 1000);
    const std::uint64_t t = m + rng() % 60;
    const auto table = round_min_max(p, t);
    const std::size_t n = 200000;
    const auto r = measure_rate(p, table, n, rng());
    CHECK(r.lossless);
    CHECK(std::abs(r.excess - r.divergence_bits) <= 4 * r.std_error + 64.0 / n);
  }
}

TEST_CASE("model-exact sources pay only the flush") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 2 + rng() % 8;
    std::vector<std::uint64_t> f(m);
    for (auto& x : f) x = 1 + rng() % 100;
    const std::uint64_t t = std::accumulate(f.begin(), f.end(), std::uint64_t{0});
    std::vector<Rational> probs;
    for (auto x : f) probs.emplace_back(Integer(x), Integer(t));
    const ProbabilityVector p(probs);
    const std::size_t n = 1 + rng() % 100000;
    const auto r = measure_rate(p, round_min_max(p, t), n, trial);
    CHECK(r.lossless);
    CHECK(r.excess <= (kCoderRegisterBits + 8.0) / static_cast<double>(n));
  }
}

TEST_CASE("rate CSV") {
  const auto r = measure_rate(parse_probability_vector("1/2,1/2"), FrequencyTable({1, 1}), 80, 1);
  std::ostringstream out;
  write_rate_csv(out, r);
  CHECK(out.str().rfind("n,total_bits,rate_bits,entropy_bits,", 0) == 0);
  CHECK(out.str().find("\n80,") != std::string::npos);
}
