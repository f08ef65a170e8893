// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#include "quantacode/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "quantacode/bounds.hpp"
#include "quantacode/detail/parallel.hpp"
#include "quantacode/detail/rounding.hpp"
#include "quantacode/error.hpp"

namespace quantacode {

namespace mp = boost::multiprecision;

namespace detail {

MinMaxRounder::MinMaxRounder(const ProbabilityVector& p)
    : p_(&p), err_(p.size()), idx_(p.size()) {
  p_double_.reserve(p.size());
  scaled_double_.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p_double_.push_back(p[i].convert_to<double>());
    scaled_double_.push_back(p.scaled()[i].convert_to<double>());
  }
}

const Integer& MinMaxRounder::round(std::uint64_t t, std::vector<std::uint64_t>& freqs) {
  const std::size_t m = p_->size();
  const Integer& den = p_->denominator();
  freqs.assign(m, 0);

  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < m; ++i) {
    scratch_ = p_->scaled()[i];
    scratch_ *= t;
    mp::divide_qr(scratch_, den, quotient_, err_[i]);
    freqs[i] = quotient_.convert_to<std::uint64_t>();
    assigned += freqs[i];
  }

  // Largest remainders take the leftover units.
  const std::uint64_t leftover = t - assigned;
  std::iota(idx_.begin(), idx_.end(), std::size_t{0});
  std::stable_sort(idx_.begin(), idx_.end(),
                   [&](std::size_t a, std::size_t b) { return err_[a] > err_[b]; });
  for (std::uint64_t k = 0; k < leftover; ++k) {
    const std::size_t i = idx_[k];
    ++freqs[i];
    err_[i] -= den;
  }

  // Every symbol needs at least one unit; take it where the error grows least.
  for (std::size_t i = 0; i < m; ++i) {
    if (freqs[i] != 0) continue;
    freqs[i] = 1;
    err_[i] -= den;
    std::size_t donor = m;
    for (std::size_t j = 0; j < m; ++j) {
      if (freqs[j] < 2) continue;
      // Removing a unit from j moves its error from e_j to e_j + B.
      scratch_ = err_[j];
      scratch_ += den;
      if (scratch_ < 0) scratch_ = -scratch_;
      if (donor == m || scratch_ < donor_error_) {
        donor = j;
        donor_error_ = scratch_;
      }
    }
    --freqs[donor];
    err_[donor] += den;
  }

  worst_ = 0;
  for (std::size_t i = 0; i < m; ++i) {
    scratch_ = err_[i];
    if (scratch_ < 0) scratch_ = -scratch_;
    if (scratch_ > worst_) worst_ = scratch_;
  }
  return worst_;
}

namespace {

// g(x) = -log1p(-x) - x >= 0 for x < 1.
double kl_term(double x) {
  if (std::fabs(x) < 1e-3) {
    const double x2 = x * x;
    return x2 * (0.5 + x * (1.0 / 3 + x * (0.25 + x * (0.2 + x / 6))));
  }
  return -std::log1p(-x) - x;
}

}  // namespace

double MinMaxRounder::divergence_estimate(std::uint64_t t) const {
  double sum = 0;
  const double td = static_cast<double>(t);
  for (std::size_t i = 0; i < err_.size(); ++i) {
    // delta_i / p_i = (t a_i - f_i B) / (t a_i)
    const double x = err_[i].convert_to<double>() / (td * scaled_double_[i]);
    sum += p_double_[i] * kl_term(x);
  }
  return sum;
}

}  // namespace detail

FrequencyTable round_min_max(const ProbabilityVector& p, std::uint64_t t) {
  if (t < p.size()) {
    throw Error(ErrorCode::DenominatorTooSmall,
                "t = " + std::to_string(t) + " < m = " + std::to_string(p.size()));
  }
  detail::MinMaxRounder rounder(p);
  std::vector<std::uint64_t> freqs;
  rounder.round(t, freqs);
  return FrequencyTable(std::move(freqs), p.canonical_order());
}

FrequencyTable exhaustive_best(const ProbabilityVector& p, std::uint64_t t) {
  const std::size_t m = p.size();
  if (m > 4 || t > 64) {
    throw Error(ErrorCode::InstanceTooLarge, "exhaustive search is limited to m <= 4, t <= 64");
  }
  if (t < m) {
    throw Error(ErrorCode::DenominatorTooSmall,
                "t = " + std::to_string(t) + " < m = " + std::to_string(m));
  }
  std::vector<std::uint64_t> current(m, 1);
  std::vector<std::uint64_t> best;
  Integer best_error;

  // Lexicographic walk over compositions: recurse on the first m - 1 parts.
  auto visit = [&](auto&& self, std::size_t pos, std::uint64_t remaining) -> void {
    if (pos + 1 == m) {
      current[pos] = remaining;
      const Integer e = scaled_error(p, current, t);
      if (best.empty() || e < best_error) {
        best = current;
        best_error = e;
      }
      return;
    }
    const std::uint64_t slots_after = m - pos - 1;
    for (std::uint64_t f = 1; f + slots_after <= remaining; ++f) {
      current[pos] = f;
      self(self, pos + 1, remaining - f);
    }
  };
  visit(visit, 0, t);
  return FrequencyTable(std::move(best), p.canonical_order());
}

std::vector<Integer> partial_quotients(const Rational& x, const Integer& max_q) {
  std::vector<Integer> out;
  Integer num = mp::numerator(x);
  Integer den = mp::denominator(x);
  Integer q_prev = 1, q = 0;  // k_{n-2}, k_{n-1}
  while (den != 0) {
    Integer a, r;
    mp::divide_qr(num, den, a, r);
    if (num < 0 && r != 0) {  // floor for negative input
      a -= 1;
      r += den;
    }
    const Integer q_next = a * q + q_prev;
    if (!out.empty() && q_next > max_q) break;
    out.push_back(a);
    q_prev = q;
    q = q_next;
    num = den;
    den = r;
  }
  return out;
}

std::vector<Convergent> cf_convergents(const Rational& x, const Integer& max_q) {
  std::vector<Convergent> out;
  if (max_q < 1) return out;
  // h_n = a_n h_{n-1} + h_{n-2}, same for k, seeded with h_{-1} = 1, h_{-2} = 0.
  Integer num = mp::numerator(x);
  Integer den = mp::denominator(x);
  Integer h2 = 0, h1 = 1, k2 = 1, k1 = 0;
  while (den != 0) {
    Integer a, r;
    mp::divide_qr(num, den, a, r);
    const Integer hn = a * h1 + h2;
    const Integer kn = a * k1 + k2;
    if (kn > max_q) break;
    Convergent c{hn, kn};
    if (!out.empty() && out.back().denominator == kn) {
      out.back() = std::move(c);
    } else {
      out.push_back(std::move(c));
    }
    h2 = h1;
    h1 = hn;
    k2 = k1;
    k1 = kn;
    num = den;
    den = r;
  }
  return out;
}

bool looks_golden_equivalent(const Rational& x, std::size_t tail) {
  const Integer limit = mp::sqrt(mp::denominator(x)) / 100;
  if (limit < 1) return false;
  const auto quotients = partial_quotients(x, limit);
  // a0 is the integer part and does not count.
  if (quotients.size() < tail + 1) return false;
  return std::all_of(quotients.end() - static_cast<std::ptrdiff_t>(tail), quotients.end(),
                     [](const Integer& a) { return a == 1; });
}

bool beats_fact_constant(std::size_t m, std::uint64_t t, const Integer& scaled_error,
                         const Integer& denominator, Kappa kappa) {
  if (m == 2) {
    // t E / B < kappa  <=>  (t E)^2 < kappa^2 B^2
    const Integer te = scaled_error * t;
    const Rational k2 = kappa_squared(kappa);
    return Rational(te * te) < k2 * Rational(denominator * denominator);
  }
  // t^(1/m) E / B < m/(m+1)  <=>  t (m+1)^m E^m < m^m B^m
  const unsigned mm = static_cast<unsigned>(m);
  const Integer lhs = Integer(t) * mp::pow(Integer(mm + 1), mm) * mp::pow(scaled_error, mm);
  const Integer rhs = mp::pow(Integer(mm), mm) * mp::pow(denominator, mm);
  return lhs < rhs;
}

Rational RecordScan::delta_star(const ScanRow& row) const {
  return Rational(row.scaled_error, denominator * row.t);
}

Real RecordScan::quality(const ScanRow& row) const {
  if (m == 2) return to_real(Rational(row.scaled_error * row.t, denominator));
  const Real tr(row.t);
  return mp::pow(tr, Real(1) / static_cast<unsigned>(m)) * to_real(row.scaled_error) /
         to_real(denominator);
}

RecordScan record_scan(const ProbabilityVector& p, std::uint64_t t_max,
                       const ScanOptions& options) {
  const std::size_t m = p.size();
  if (t_max < m) {
    throw Error(ErrorCode::DenominatorTooSmall,
                "t_max = " + std::to_string(t_max) + " < m = " + std::to_string(m));
  }
  RecordScan scan;
  scan.m = m;
  scan.denominator = p.denominator();
  scan.kappa = options.kappa;

  const std::uint64_t count = t_max - m + 1;
  std::vector<Integer> errors(count);
  detail::parallel_chunks(m, t_max + 1, options.jobs, [&](std::uint64_t lo, std::uint64_t hi) {
    detail::MinMaxRounder rounder(p);
    std::vector<std::uint64_t> freqs;
    for (std::uint64_t t = lo; t < hi; ++t) errors[t - m] = rounder.round(t, freqs);
  });

  scan.rows.reserve(count);
  Integer best;
  for (std::uint64_t t = m; t <= t_max; ++t) {
    ScanRow row;
    row.t = t;
    row.scaled_error = std::move(errors[t - m]);
    row.is_record = scan.rows.empty() || row.scaled_error < best;
    row.beats_fact_constant =
        beats_fact_constant(m, t, row.scaled_error, scan.denominator, options.kappa);
    if (row.is_record) best = row.scaled_error;
    if (row.beats_fact_constant) ++scan.rows_beating;
    const bool exact = row.scaled_error == 0;
    if (row.is_record) {
      RecordEntry entry;
      entry.t = t;
      entry.freqs = round_min_max(p, t).freqs();
      entry.delta_star = scan.delta_star(row);
      entry.quality = scan.quality(row);
      entry.beats_fact_constant = row.beats_fact_constant;
      if (entry.beats_fact_constant) ++scan.records_beating;
      scan.records.push_back(std::move(entry));
    }
    scan.rows.push_back(std::move(row));
    if (exact) {
      scan.terminated_exact = true;
      break;
    }
  }
  return scan;
}

void write_scan_csv(std::ostream& out, const RecordScan& scan, bool records_only) {
  out << "t,delta_star_decimal,quality_decimal,is_record,beats_fact_constant\n";
  for (const auto& row : scan.rows) {
    if (records_only && !row.is_record) continue;
    out << row.t << ',' << format_sci(to_real(scan.delta_star(row)), 30) << ','
        << format_sci(scan.quality(row), 30) << ',' << (row.is_record ? 1 : 0) << ','
        << (row.beats_fact_constant ? 1 : 0) << '\n';
  }
}

FrequencyTable best_table_under_width(const ProbabilityVector& p, unsigned width_bits,
                                      Objective objective, unsigned jobs) {
  const std::size_t m = p.size();
  if (width_bits >= 63 || (std::uint64_t{1} << width_bits) < m) {
    throw Error(ErrorCode::WidthTooSmall,
                "W = " + std::to_string(width_bits) + " cannot hold " + std::to_string(m) +
                    " symbols");
  }
  const std::uint64_t t_hi = std::uint64_t{1} << width_bits;
  const std::uint64_t count = t_hi - m + 1;

  if (objective == Objective::MinDelta) {
    // delta*(t) = E_t / (t B); compare E_a * t_b against E_b * t_a.
    std::vector<Integer> errors(count);
    detail::parallel_chunks(m, t_hi + 1, jobs, [&](std::uint64_t lo, std::uint64_t hi) {
      detail::MinMaxRounder rounder(p);
      std::vector<std::uint64_t> freqs;
      for (std::uint64_t t = lo; t < hi; ++t) errors[t - m] = rounder.round(t, freqs);
    });
    std::uint64_t best_t = m;
    for (std::uint64_t t = m + 1; t <= t_hi; ++t) {
      if (errors[t - m] * best_t < errors[best_t - m] * t) best_t = t;
    }
    return round_min_max(p, best_t);
  }

  // Divergence: rank every t in double, then settle the near-ties at working
  // precision.
  std::vector<double> estimate(count);
  detail::parallel_chunks(m, t_hi + 1, jobs, [&](std::uint64_t lo, std::uint64_t hi) {
    detail::MinMaxRounder rounder(p);
    std::vector<std::uint64_t> freqs;
    for (std::uint64_t t = lo; t < hi; ++t) {
      rounder.round(t, freqs);
      estimate[t - m] = rounder.divergence_estimate(t);
    }
  });
  const double floor_estimate = *std::min_element(estimate.begin(), estimate.end());
  const double window = floor_estimate * (1 + 1e-6) + std::numeric_limits<double>::min();

  std::optional<FrequencyTable> best;
  Real best_d;
  for (std::uint64_t t = m; t <= t_hi; ++t) {
    if (estimate[t - m] > window) continue;
    FrequencyTable table = round_min_max(p, t);
    Real d = kl_divergence(p, table).nats;
    if (!best || d < best_d) {
      best = std::move(table);
      best_d = std::move(d);
    }
  }
  return *best;
}

}  // namespace quantacode
