// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>
#include <sstream>

#include "quantacode/approx.hpp"
#include "quantacode/bounds.hpp"
#include "quantacode/error.hpp"
#include "quantacode/presets.hpp"
#include "test_support.hpp"

using namespace quantacode;
namespace mp = boost::multiprecision;

namespace {

double as_double(const Real& x) { return x.convert_to<double>(); }

// Plain sum p_i ln(p_i t / f_i), no cancellation tricks.
Real naive_divergence_nats(const ProbabilityVector& p, const FrequencyTable& table) {
  Real d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Rational q(Integer(table.freq(i)), Integer(table.total()));
    d += to_real(p[i]) * mp::log(to_real(p[i] / q));
  }
  return d;
}

void expect_close(const Real& got, const Real& want, const char* tol) {
  CHECK(mp::abs(got - want) <= Real(tol) * mp::abs(want));
}

}  // namespace

TEST_CASE("kl_divergence examples") {
  const auto half = parse_probability_vector("1/2,1/2");
  const auto zero = kl_divergence(half, FrequencyTable({1, 1}));
  CHECK(zero.nats == 0);
  CHECK(zero.bits == 0);

  const auto p = parse_probability_vector("7/10,3/10");
  // 1 - H2(0.7)
  CHECK(as_double(kl_divergence(p, FrequencyTable({1, 1})).bits) ==
        doctest::Approx(0.118709100769307).epsilon(1e-13));
  // 0.7 ln(0.7/0.75) + 0.3 ln(0.3/0.25)
  CHECK(as_double(kl_divergence(p, FrequencyTable({3, 1})).nats) ==
        doctest::Approx(0.00640145699732037).epsilon(1e-13));

  const auto p3 = parse_probability_vector("0.7,0.2,0.1");
  CHECK(as_double(kl_divergence(p3, FrequencyTable({1, 1, 1})).bits) ==
        doctest::Approx(0.428182851274117).epsilon(1e-13));
  CHECK(kl_divergence(p3, FrequencyTable({7, 2, 1})).nats == 0);

  const std::vector<std::uint64_t> with_zero{3, 0};
  CHECK_THROWS_AS(kl_divergence(p, with_zero), Error);
  const std::vector<std::uint64_t> wrong_m{1, 1, 1};
  CHECK_THROWS_AS(kl_divergence(p, wrong_m), Error);
}

TEST_CASE("kl_divergence keeps digits for tiny divergences") {
  // x = 1e-20 relative perturbation: D ~ sum p_i x_i^2 / 2 stays positive.
  const auto golden = golden_source();
  const auto table = round_min_max(golden, 832040);
  const Real d = kl_divergence(golden, table).nats;
  CHECK(d > 0);
  expect_close(d, naive_divergence_nats(golden, table), "1e-25");
}

TEST_CASE("lemma1_bound examples") {
  CHECK(lemma1_bound(3, Rational(0), Rational(1, 10)) == 0);
  expect_close(lemma1_bound(2, Rational(1, 100), Rational(1, 10)), to_real(Rational(1, 45)),
               "1e-45");
  CHECK_THROWS_AS(lemma1_bound(2, Rational(1, 10), Rational(1, 10)), Error);
  try {
    lemma1_bound(2, Rational(1, 10), Rational(1, 10));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RatioNotLessThanOne);
  }
}

TEST_CASE("theorem1_bound examples") {
  const Rational pmin(3, 10);
  // (1/100) / (1 - 1/60) = 3/295
  expect_close(theorem1_bound(2, 100, pmin), to_real(Rational(3, 295)), "1e-45");
  CHECK(as_double(theorem1_bound(2, 100, pmin)) == doctest::Approx(0.0101694915254237));
  const Real far = theorem1_bound(2, 1000000, pmin);
  CHECK(mp::abs(far / Real("1e-6") - 1) < Real("1e-5"));
  CHECK_THROWS_AS(theorem1_bound(2, 1, pmin), Error);
  CHECK_THROWS_AS(theorem1_bound(2, 5, Rational(1, 10)), Error);  // 2 t p_min = 1
}

TEST_CASE("theorem2 bounds") {
  CHECK(as_double(theorem2_bound_mary(3, 1000, Rational(1, 5))) ==
        doctest::Approx(3.00150075037519e-4).epsilon(1e-13));
  CHECK_THROWS_AS(theorem2_bound_mary(2, 1000, Rational(1, 5)), Error);
  CHECK_THROWS_AS(theorem2_bound_mary(3, 1, Rational(1, 5)), Error);
  const Real ratio = theorem2_bound_mary(3, 100000000, Rational(1, 5)) /
                     (3 * mp::pow(Real(100000000), Real(-4) / 3));
  CHECK(mp::abs(ratio - 1) < Real("1e-9"));

  CHECK(kappa_select(true) == Kappa::Golden);
  CHECK(kappa_select(false) == Kappa::Generic);
  CHECK(as_double(kappa_value(Kappa::Golden)) == doctest::Approx(0.4472136).epsilon(1e-7));
  CHECK(as_double(kappa_value(Kappa::Generic)) == doctest::Approx(0.3535534).epsilon(1e-7));

  CHECK(as_double(theorem2_bound_binary(100, Rational(3, 10), Kappa::Generic)) ==
        doctest::Approx(7.07190124341966e-5).epsilon(1e-13));
  CHECK_THROWS_AS(theorem2_bound_binary(1, Rational(3, 10), Kappa::Generic), Error);
}

TEST_CASE("bounds are the lemma at the matching delta*") {
  const Rational pmin(1, 7);
  for (std::uint64_t t : {10ull, 97ull, 1000ull, 123457ull}) {
    expect_close(lemma1_bound(5, Rational(1, Integer(2 * t)), pmin), theorem1_bound(5, t, pmin),
                 "1e-45");
    for (std::size_t m : {3u, 4u, 8u}) {
      const Real d = mp::pow(Real(t), Real(-1) - Real(1) / static_cast<unsigned>(m));
      expect_close(lemma1_bound(m, d, to_real(pmin)), theorem2_bound_mary(m, t, pmin), "1e-45");
    }
    for (Kappa k : {Kappa::Golden, Kappa::Generic}) {
      const Real d = kappa_value(k) / (Real(t) * t);
      expect_close(lemma1_bound(2, d, to_real(pmin)), theorem2_bound_binary(t, pmin, k), "1e-45");
    }
  }
}

TEST_CASE("bounds decrease strictly in t") {
  const Rational pmin(1, 20);
  Real prev1 = -1, prev2 = -1, prev3 = -1;
  for (std::uint64_t t = 11; t < 3000; t += 7) {
    const Real b1 = theorem1_bound(4, t, pmin);
    const Real b2 = theorem2_bound_mary(4, t, pmin);
    const Real b3 = theorem2_bound_binary(t, pmin, Kappa::Golden);
    if (prev1 >= 0) {
      CHECK(b1 < prev1);
      CHECK(b2 < prev2);
      CHECK(b3 < prev3);
    }
    prev1 = b1;
    prev2 = b2;
    prev3 = b3;
  }
}

TEST_CASE("Lemma bound holds on random tables") {
  std::mt19937_64 rng(77);
  int checked = 0, attempts = 0;
  while (checked < 1000 && attempts < 100000) {
    ++attempts;
    const std::size_t m = 2 + rng() % 7;
    const auto p = testing::random_source(rng, m, 1000);
    const std::uint64_t t = m + rng() % 2000;
    auto f = round_min_max(p, t).freqs();
    for (std::uint64_t k = rng() % 4; k > 0; --k) {
      const std::size_t from = rng() % m, to = rng() % m;
      if (f[from] > 1) {
        --f[from];
        ++f[to];
      }
    }
    const FrequencyTable table(f);
    const auto e = error_profile(p, table);
    if (e.ratio >= 1) continue;
    ++checked;
    const Real d = kl_divergence(p, table).nats;
    const Real bound = lemma1_bound(m, e.delta_star, p.p_min());
    CHECK(d <= bound);
    expect_close(d + 1, naive_divergence_nats(p, table) + 1, "1e-40");
  }
  CHECK(checked == 1000);
}

TEST_CASE("corollary1_width") {
  const auto a = corollary1_width(2, Rational(1, 1000), Rational(3, 10));
  CHECK(a.width_bits == 10);
  CHECK(as_double(a.raw) == doctest::Approx(10.96818677).epsilon(1e-9));
  const auto b = corollary1_width(4, Rational(1, 1000), Rational(1, 10));
  CHECK(b.width_bits == 11);
  CHECK(as_double(b.raw) == doctest::Approx(11.96938652).epsilon(1e-9));
  CHECK(corollary1_width(2, Rational(1000000), Rational(1, 2)).width_bits == 1);
  // m/R + 1/p_min = 16 exactly: W must stay strictly below 4.
  CHECK(corollary1_width(2, Rational(1, 7), Rational(1, 2)).width_bits == 3);
  CHECK_THROWS_AS(corollary1_width(2, Rational(0), Rational(1, 2)), Error);
  CHECK_THROWS_AS(corollary1_width(2, Rational(-1), Rational(1, 2)), Error);
}

TEST_CASE("corollary2_width") {
  CHECK(as_double(corollary2_width(2, Rational(1, 1000), Rational(3, 10), Kappa::Generic)) ==
        doctest::Approx(5.73409338743870).epsilon(1e-12));
  CHECK(as_double(corollary2_width(3, Rational(1, 1000), Rational(1, 5), std::nullopt)) ==
        doctest::Approx(9.66486195669891).epsilon(1e-12));
  CHECK_THROWS_AS(corollary2_width(2, Rational(1, 1000), Rational(3, 10), std::nullopt), Error);
  CHECK_THROWS_AS(corollary2_width(3, Rational(0), Rational(1, 5), std::nullopt), Error);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::size_t m = 2 + rng() % 10;
    const Rational R(Integer(1 + rng() % 1000), Integer(1000000));
    const Rational pmin(Integer(1), Integer(m + rng() % 100));
    const auto kappa = m == 2 ? std::optional<Kappa>(Kappa::Golden) : std::nullopt;
    CHECK(corollary2_width(m, R, pmin, kappa) < corollary1_width(m, R, pmin).raw);
  }
}

TEST_CASE("bound_report") {
  const auto p = parse_probability_vector("0.7,0.3");
  const auto r = bound_report(p, round_min_max(p, 4));
  CHECK(r.t == 4);
  CHECK(r.width_bits == 2);
  CHECK(r.delta_star == Rational(1, 20));
  CHECK(r.applicable.lemma1);
  CHECK(r.lemma1);
  CHECK(r.divergence_nats <= *r.lemma1);
  CHECK(r.theorem1);
  CHECK(r.applicable.theorem1);  // 1/20 <= 1/8 and 2 t p_min = 2.4 > 1
  CHECK(r.divergence_nats <= *r.theorem1);
  std::ostringstream text, csv;
  write_report_text(text, r);
  write_report_csv(csv, r);
  CHECK(text.str().find("D (nats)          6.40145699732e-03") != std::string::npos);
  CHECK(csv.str().rfind("m,t,W,delta_star,ratio,divergence_nats,", 0) == 0);
}

TEST_CASE("plan_precision examples") {
  SUBCASE("exact table") {
    const auto p = parse_probability_vector("7/10,3/10");
    CHECK(plan_precision(p, Rational(1, 10), PlanMode::Opportunistic).t == 2);
    CHECK(plan_precision(p, Rational(1, 100), PlanMode::Opportunistic).t == 3);
    for (const char* r : {"1e-6", "1e-30"}) {
      const auto plan = plan_precision(p, parse_rational(r), PlanMode::Opportunistic);
      CHECK(plan.t == 10);
      CHECK(plan.width_bits == 4);
      CHECK(plan.verified_D == 0);
    }
  }
  SUBCASE("golden source") {
    const auto golden = golden_source();
    const Rational R(1, 100000);
    const auto opp = plan_precision(golden, R, PlanMode::Opportunistic);
    CHECK(opp.t == 21);
    CHECK(opp.width_bits <= 7);
    CHECK(opp.table.freqs() == std::vector<std::uint64_t>{13, 8});
    CHECK(as_double(opp.verified_D) == doctest::Approx(2.17764277e-6).epsilon(1e-8));
    const auto guaranteed = plan_precision(golden, R, PlanMode::Guaranteed);
    CHECK(guaranteed.corollary1_width == 17);
    CHECK(guaranteed.width_bits == 17);
    CHECK(guaranteed.verified_D <= to_real(R));
    CHECK(2 * opp.width_bits <= guaranteed.width_bits + 4);
  }
  SUBCASE("scan limit") {
    const auto p = parse_probability_vector("0.5,0.25,0.125,0.125");
    CHECK(plan_precision(p, Rational(1000), PlanMode::Opportunistic).t == 4);
    try {
      plan_precision(golden_source(), parse_rational("1e-12"), PlanMode::Guaranteed);
      FAIL("expected TargetUnachievableWithinScan");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TargetUnachievableWithinScan);
    }
  }
}

TEST_CASE("plans verify independently") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 12; ++i) {
    const std::size_t m = 2 + rng() % 5;
    const auto p = testing::random_source(rng, m, 1000);
    const Rational R(1, i % 2 ? 1000 : 100);
    for (PlanMode mode : {PlanMode::Guaranteed, PlanMode::Opportunistic}) {
      std::optional<PrecisionPlan> found;
      try {
        found = plan_precision(p, R, mode);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TargetUnachievableWithinScan);
        CHECK(mode == PlanMode::Opportunistic);
        continue;
      }
      const auto& plan = *found;
      CHECK(plan.table.total() == plan.t);
      if (mode == PlanMode::Opportunistic) {
        CHECK(plan.width_bits == register_width(plan.t));
      } else {
        CHECK(plan.width_bits >= register_width(plan.t));
      }
      const Real d = naive_divergence_nats(p, plan.table);
      CHECK(mp::abs(d - plan.verified_D) <= Real("1e-40"));
      CHECK(d <= to_real(R));
      CHECK(plan.memory_bits == memory_cost(m, plan.width_bits));
      if (mode == PlanMode::Guaranteed) {
        CHECK(plan.width_bits <= plan.corollary1_width + 2);
        CHECK(Real(plan.width_bits) <= plan.corollary1_raw + 2);
      }
    }
  }
}

TEST_CASE("plan writers") {
  const auto plan = plan_precision(golden_source(), Rational(1, 100000), PlanMode::Opportunistic);
  std::ostringstream text, csv;
  write_plan_text(text, plan);
  write_plan_csv(csv, plan);
  CHECK(text.str().find("opportunistic") != std::string::npos);
  CHECK(csv.str().find("21") != std::string::npos);
  CHECK(std::string(mode_name(PlanMode::Guaranteed)) == "guaranteed");
}
