// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>

#include "quantacode/kappa.hpp"
#include "quantacode/prob_model.hpp"

namespace quantacode {

// All redundancy bounds are in nats per symbol. Divergences are also given in
// bits (nats / ln 2) for comparison with coder measurements.

struct Divergence {
  Real nats;
  Real bits;
};

/// D(p || f/t) at working precision. Summed as p_i g(x_i) with
/// g(x) = -log1p(-x) - x, x_i = delta_i / p_i, using sum delta_i = 0, so
/// every term is non-negative and tiny divergences keep their digits.
Divergence kl_divergence(const ProbabilityVector& p, const FrequencyTable& table);
/// Throws ZeroFrequency if any f_i is zero.
Divergence kl_divergence(const ProbabilityVector& p, std::span<const std::uint64_t> freqs);

/// m delta* / (1 - delta*/p_min), evaluated exactly then rounded once.
/// Throws RatioNotLessThanOne unless delta* < p_min.
Real lemma1_bound(std::size_t m, const Rational& delta_star, const Rational& p_min);
/// Same formula for an irrational delta* (used for the algebraic identities).
Real lemma1_bound(std::size_t m, const Real& delta_star, const Real& p_min);

/// (m / 2t) / (1 - 1/(2 t p_min)); requires 2 t p_min > 1.
Real theorem1_bound(std::size_t m, std::uint64_t t, const Rational& p_min);

/// (m / t^(1+1/m)) / (1 - 1/(t^(1+1/m) p_min)); requires m > 2 and
/// t^(1+1/m) p_min > 1.
Real theorem2_bound_mary(std::size_t m, std::uint64_t t, const Rational& p_min);

Kappa kappa_select(bool golden_equivalent) noexcept;

/// (2 kappa / t^2) / (1 - kappa/(t^2 p_min)); requires t^2 p_min > kappa.
Real theorem2_bound_binary(std::uint64_t t, const Rational& p_min, Kappa kappa);

struct WidthBound {
  unsigned width_bits = 0;
  Real raw;  // log2(m/R + 1/p_min)
};

/// Largest W with W < log2(m/R + 1/p_min), at least 1. Decided exactly as
/// 2^W < m/R + 1/p_min.
WidthBound corollary1_width(std::size_t m, const Rational& target_R, const Rational& p_min);

/// Existence bound on W: (m/(m+1)) log2(m/R + 1/p_min) + 1 for m > 2, and
/// (1/2) log2(2/R + 1/p_min) + (1/2) log2(4 kappa) for m = 2 (KappaMissing
/// without kappa).
Real corollary2_width(std::size_t m, const Rational& target_R, const Rational& p_min,
                      std::optional<Kappa> kappa);

struct BoundFlags {
  bool lemma1 = false;    // delta*/p_min < 1
  bool theorem1 = false;  // 2 t p_min > 1 and delta* <= 1/(2t)
  bool theorem2 = false;  // delta* below t^(-1-1/m) (m > 2) or kappa/t^2 (m = 2)
};

/// Everything known about one (p, table) pair. A bound value is present when
/// its formula is defined; the flag says whether this table meets the bound's
/// hypothesis on delta*, in which case divergence_nats <= bound holds.
struct BoundReport {
  std::size_t m = 0;
  std::uint64_t t = 0;
  unsigned width_bits = 0;
  Rational delta_star;
  Rational p_min;
  Rational ratio;
  Real divergence_nats;
  Real divergence_bits;
  std::optional<Real> lemma1;
  std::optional<Real> theorem1;
  std::optional<Real> theorem2;
  std::optional<Kappa> kappa;
  BoundFlags applicable;
};

BoundReport bound_report(const ProbabilityVector& p, const FrequencyTable& table,
                         Kappa kappa = Kappa::Generic);
void write_report_text(std::ostream& out, const BoundReport& report);
void write_report_csv(std::ostream& out, const BoundReport& report);

enum class PlanMode { Guaranteed, Opportunistic };

struct PlanOptions {
  Kappa kappa = Kappa::Generic;
  unsigned jobs = 1;
};

struct PrecisionPlan {
  PlanMode mode = PlanMode::Guaranteed;
  Rational target_R;
  unsigned width_bits = 0;
  std::uint64_t t = 0;
  FrequencyTable table;
  Real verified_D;  // nats
  unsigned corollary1_width = 0;
  Real corollary1_raw;
  Real corollary2_width;
  std::uint64_t memory_bits = 0;
  Real eta;  // width_bits / log2(m / R)
};

/// Guaranteed: W from corollary1_width, best-divergence table under that
/// width, verified D <= R (widening by up to two bits if verification fails).
/// Opportunistic: first t (ascending) whose exact divergence is <= R.
/// Both give up past t = 2^(corollary1_width + 2) with
/// TargetUnachievableWithinScan.
PrecisionPlan plan_precision(const ProbabilityVector& p, const Rational& target_R, PlanMode mode,
                             const PlanOptions& options = {});

void write_plan_text(std::ostream& out, const PrecisionPlan& plan);
void write_plan_csv(std::ostream& out, const PrecisionPlan& plan);

const char* mode_name(PlanMode mode) noexcept;

}  // namespace quantacode
