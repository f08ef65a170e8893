// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#include "quantacode/bounds.hpp"

#include <algorithm>
#include <ostream>

#include "quantacode/approx.hpp"
#include "quantacode/detail/rounding.hpp"
#include "quantacode/error.hpp"

namespace quantacode {

namespace mp = boost::multiprecision;

Divergence kl_divergence(const ProbabilityVector& p, std::span<const std::uint64_t> freqs) {
  if (freqs.size() != p.size()) {
    throw Error(ErrorCode::DimensionMismatch, "frequency count does not match alphabet");
  }
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (freqs[i] == 0) throw Error(ErrorCode::ZeroFrequency, "f_" + std::to_string(i) + " is zero");
    t += freqs[i];
  }
  Real nats = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    // x = delta_i / p_i = 1 - f_i / (t p_i)
    const Rational x = 1 - Rational(Integer(freqs[i])) / (p[i] * t);
    if (x == 0) continue;
    const Real xr = to_real(x);
    nats += to_real(p[i]) * (-mp::log1p(-xr) - xr);
  }
  Real bits = nats / ln2();
  return {std::move(nats), std::move(bits)};
}

Divergence kl_divergence(const ProbabilityVector& p, const FrequencyTable& table) {
  return kl_divergence(p, std::span<const std::uint64_t>(table.freqs()));
}

Real lemma1_bound(std::size_t m, const Rational& delta_star, const Rational& p_min) {
  if (delta_star >= p_min) {
    throw Error(ErrorCode::RatioNotLessThanOne, "delta*/p_min = " +
                                                    format_rational(delta_star / p_min) +
                                                    " is not below 1");
  }
  return to_real(Rational(Integer(m)) * delta_star / (1 - delta_star / p_min));
}

Real lemma1_bound(std::size_t m, const Real& delta_star, const Real& p_min) {
  if (delta_star >= p_min) {
    throw Error(ErrorCode::RatioNotLessThanOne, "delta*/p_min is not below 1");
  }
  return Real(m) * delta_star / (1 - delta_star / p_min);
}

Real theorem1_bound(std::size_t m, std::uint64_t t, const Rational& p_min) {
  const Rational two_t_pmin = Rational(Integer(2) * t) * p_min;
  if (two_t_pmin <= 1) {
    throw Error(ErrorCode::PreconditionViolated,
                "theorem 1 bound needs 2 t p_min > 1 (t = " + std::to_string(t) + ")");
  }
  const Rational lead(Integer(m), Integer(2) * t);
  return to_real(lead / (1 - 1 / two_t_pmin));
}

Real theorem2_bound_mary(std::size_t m, std::uint64_t t, const Rational& p_min) {
  if (m <= 2) {
    throw Error(ErrorCode::AlphabetNotMary, "the m-ary bound needs m > 2, got m = " +
                                                std::to_string(m));
  }
  // t^(1+1/m) p_min > 1  <=>  t^(m+1) num^m > den^m
  const unsigned mm = static_cast<unsigned>(m);
  if (mp::pow(Integer(t), mm + 1) * mp::pow(mp::numerator(p_min), mm) <=
      mp::pow(mp::denominator(p_min), mm)) {
    throw Error(ErrorCode::PreconditionViolated,
                "m-ary bound needs t^(1+1/m) p_min > 1 (t = " + std::to_string(t) + ")");
  }
  const Real scale = mp::pow(Real(t), 1 + Real(1) / mm);
  return Real(mm) / scale / (1 - 1 / (scale * to_real(p_min)));
}

Kappa kappa_select(bool golden_equivalent) noexcept {
  return golden_equivalent ? Kappa::Golden : Kappa::Generic;
}

Real theorem2_bound_binary(std::uint64_t t, const Rational& p_min, Kappa kappa) {
  // t^2 p_min > kappa  <=>  (t^2 p_min)^2 > kappa^2
  const Rational t2 = Rational(Integer(t) * t);
  const Rational s = t2 * p_min;
  if (s * s <= kappa_squared(kappa)) {
    throw Error(ErrorCode::PreconditionViolated,
                "binary bound needs t^2 p_min > kappa (t = " + std::to_string(t) + ")");
  }
  const Real k = kappa_value(kappa);
  return 2 * k / to_real(t2) / (1 - k / to_real(s));
}

WidthBound corollary1_width(std::size_t m, const Rational& target_R, const Rational& p_min) {
  if (target_R <= 0) {
    throw Error(ErrorCode::NonPositiveTarget, "target redundancy must be positive");
  }
  const Rational x = Rational(Integer(m)) / target_R + 1 / p_min;
  // smallest k with 2^k >= x; the answer is k - 1.
  const Integer& num = mp::numerator(x);
  const Integer& den = mp::denominator(x);
  unsigned k = 0;
  while ((den << k) < num) ++k;
  WidthBound out;
  out.width_bits = std::max(1u, k == 0 ? 0u : k - 1);
  out.raw = mp::log2(to_real(x));
  return out;
}

Real corollary2_width(std::size_t m, const Rational& target_R, const Rational& p_min,
                      std::optional<Kappa> kappa) {
  if (target_R <= 0) {
    throw Error(ErrorCode::NonPositiveTarget, "target redundancy must be positive");
  }
  const Real inner = to_real(Rational(Integer(m)) / target_R + 1 / p_min);
  if (m == 2) {
    if (!kappa) throw Error(ErrorCode::KappaMissing, "binary sources need kappa");
    return mp::log2(inner) / 2 + mp::log2(4 * kappa_value(*kappa)) / 2;
  }
  return Real(m) / (m + 1) * mp::log2(inner) + 1;
}

BoundReport bound_report(const ProbabilityVector& p, const FrequencyTable& table, Kappa kappa) {
  const auto profile = error_profile(p, table);
  const auto divergence = kl_divergence(p, table);
  BoundReport r;
  r.m = p.size();
  r.t = table.total();
  r.width_bits = table.width_bits();
  r.delta_star = profile.delta_star;
  r.p_min = p.p_min();
  r.ratio = profile.ratio;
  r.divergence_nats = divergence.nats;
  r.divergence_bits = divergence.bits;

  if (profile.ratio < 1) {
    r.lemma1 = lemma1_bound(r.m, r.delta_star, r.p_min);
    r.applicable.lemma1 = true;
  }
  if (Rational(Integer(2) * r.t) * r.p_min > 1) {
    r.theorem1 = theorem1_bound(r.m, r.t, r.p_min);
    r.applicable.theorem1 = r.delta_star <= Rational(1, Integer(2) * r.t);
  }
  if (r.m == 2) {
    r.kappa = kappa;
    try {
      r.theorem2 = theorem2_bound_binary(r.t, r.p_min, kappa);
      // delta* < kappa / t^2  <=>  (delta* t^2)^2 < kappa^2
      const Rational scaled = r.delta_star * Integer(r.t) * Integer(r.t);
      r.applicable.theorem2 = scaled * scaled < kappa_squared(kappa);
    } catch (const Error&) {
    }
  } else {
    try {
      r.theorem2 = theorem2_bound_mary(r.m, r.t, r.p_min);
      // delta* < t^(-1-1/m)  <=>  delta*^m t^(m+1) < 1
      const unsigned mm = static_cast<unsigned>(r.m);
      r.applicable.theorem2 =
          mp::pow(mp::numerator(r.delta_star), mm) * mp::pow(Integer(r.t), mm + 1) <
          mp::pow(mp::denominator(r.delta_star), mm);
    } catch (const Error&) {
    }
  }
  return r;
}

namespace {

std::string opt12(const std::optional<Real>& v) { return v ? format_sci(*v, 12) : "n/a"; }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

void write_report_text(std::ostream& out, const BoundReport& r) {
  out << "# working precision: " << working_digits() << " digits\n"
      << "m                 " << r.m << '\n'
      << "t                 " << r.t << '\n'
      << "W                 " << r.width_bits << '\n'
      << "delta*            " << format_rational(r.delta_star) << " ("
      << format_sci(to_real(r.delta_star), 12) << ")\n"
      << "delta*/p_min      " << format_sci(to_real(r.ratio), 12) << '\n'
      << "D (nats)          " << format_sci(r.divergence_nats, 12) << '\n'
      << "D (bits)          " << format_sci(r.divergence_bits, 12) << '\n'
      << "lemma1 bound      " << opt12(r.lemma1) << "  applies: " << yes_no(r.applicable.lemma1)
      << '\n'
      << "theorem1 bound    " << opt12(r.theorem1)
      << "  applies: " << yes_no(r.applicable.theorem1) << '\n'
      << "theorem2 bound    " << opt12(r.theorem2)
      << "  applies: " << yes_no(r.applicable.theorem2);
  if (r.kappa) out << "  (kappa " << kappa_name(*r.kappa) << ')';
  out << '\n';
}

void write_report_csv(std::ostream& out, const BoundReport& r) {
  out << "m,t,W,delta_star,ratio,divergence_nats,divergence_bits,lemma1,theorem1,theorem2,"
         "kappa,lemma1_applies,theorem1_applies,theorem2_applies\n"
      << r.m << ',' << r.t << ',' << r.width_bits << ',' << format_sci(to_real(r.delta_star), 12)
      << ',' << format_sci(to_real(r.ratio), 12) << ',' << format_sci(r.divergence_nats, 12)
      << ',' << format_sci(r.divergence_bits, 12) << ',' << opt12(r.lemma1) << ','
      << opt12(r.theorem1) << ',' << opt12(r.theorem2) << ','
      << (r.kappa ? kappa_name(*r.kappa) : "n/a") << ',' << (r.applicable.lemma1 ? 1 : 0) << ','
      << (r.applicable.theorem1 ? 1 : 0) << ',' << (r.applicable.theorem2 ? 1 : 0) << '\n';
}

const char* mode_name(PlanMode mode) noexcept {
  return mode == PlanMode::Guaranteed ? "guaranteed" : "opportunistic";
}

PrecisionPlan plan_precision(const ProbabilityVector& p, const Rational& target_R, PlanMode mode,
                             const PlanOptions& options) {
  const std::size_t m = p.size();
  const WidthBound cor1 = corollary1_width(m, target_R, p.p_min());
  const Real cor2 =
      corollary2_width(m, target_R, p.p_min(),
                       m == 2 ? std::optional<Kappa>(options.kappa) : std::nullopt);
  const Real target = to_real(target_R);
  const unsigned max_width = cor1.width_bits + 2;
  if (mode == PlanMode::Guaranteed && max_width >= 40) {
    throw Error(ErrorCode::TargetUnachievableWithinScan,
                "target needs a width above 40 bits");
  }

  auto finish = [&](unsigned width, FrequencyTable table, Real d) {
    const std::uint64_t t = table.total();
    Real eta = Real(width) / mp::log2(to_real(Rational(Integer(m)) / target_R));
    return PrecisionPlan{.mode = mode,
                         .target_R = target_R,
                         .width_bits = width,
                         .t = t,
                         .table = std::move(table),
                         .verified_D = std::move(d),
                         .corollary1_width = cor1.width_bits,
                         .corollary1_raw = cor1.raw,
                         .corollary2_width = cor2,
                         .memory_bits = memory_cost(m, width),
                         .eta = std::move(eta)};
  };

  if (mode == PlanMode::Guaranteed) {
    const unsigned first = std::max(cor1.width_bits, ceil_log2(m));
    for (unsigned w = first; w <= max_width; ++w) {
      FrequencyTable table = best_table_under_width(p, w, Objective::MinDivergence, options.jobs);
      Real d = kl_divergence(p, table).nats;
      if (d <= target) return finish(w, std::move(table), std::move(d));
    }
  } else {
    const std::uint64_t t_hi = std::uint64_t{1} << std::min(max_width, 40u);
    const double target_estimate = target.convert_to<double>() * (1 + 1e-6);
    detail::MinMaxRounder rounder(p);
    std::vector<std::uint64_t> freqs;
    for (std::uint64_t t = m; t <= t_hi; ++t) {
      rounder.round(t, freqs);
      if (rounder.divergence_estimate(t) > target_estimate) continue;
      Real d = kl_divergence(p, std::span<const std::uint64_t>(freqs)).nats;
      if (d <= target) {
        FrequencyTable table(freqs, p.canonical_order());
        const unsigned w = table.width_bits();
        return finish(w, std::move(table), std::move(d));
      }
    }
  }
  throw Error(ErrorCode::TargetUnachievableWithinScan,
              std::string(mode_name(mode)) + " plan found no table with D <= R up to t = 2^" +
                  std::to_string(std::min(max_width, 40u)));
}

void write_plan_text(std::ostream& out, const PrecisionPlan& plan) {
  out << "# working precision: " << working_digits() << " digits\n"
      << "mode              " << mode_name(plan.mode) << '\n'
      << "target R (nats)   " << format_sci(to_real(plan.target_R), 12) << '\n'
      << "W                 " << plan.width_bits << '\n'
      << "t                 " << plan.t << '\n'
      << "verified D (nats) " << format_sci(plan.verified_D, 12) << '\n'
      << "corollary1 W      " << plan.corollary1_width << "  (raw bound "
      << format_sci(plan.corollary1_raw, 12) << ")\n"
      << "corollary2 W      " << format_sci(plan.corollary2_width, 12) << '\n'
      << "memory M = mW     " << plan.memory_bits << " bits\n"
      << "eta = W/log2(m/R) " << format_sci(plan.eta, 12) << '\n'
      << "table\n"
      << table_to_string(plan.table);
}

void write_plan_csv(std::ostream& out, const PrecisionPlan& plan) {
  out << "mode,target_R,W,t,verified_D_nats,corollary1_W,corollary1_raw,corollary2_W,memory_M,eta,"
         "freqs\n"
      << mode_name(plan.mode) << ',' << format_sci(to_real(plan.target_R), 12) << ','
      << plan.width_bits << ',' << plan.t << ',' << format_sci(plan.verified_D, 12) << ','
      << plan.corollary1_width << ',' << format_sci(plan.corollary1_raw, 12) << ','
      << format_sci(plan.corollary2_width, 12) << ',' << plan.memory_bits << ','
      << format_sci(plan.eta, 12) << ',';
  for (std::size_t i = 0; i < plan.table.size(); ++i) {
    if (i) out << ' ';
    out << plan.table.freq(i);
  }
  out << '\n';
}

}  // namespace quantacode
