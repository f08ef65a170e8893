// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "quantacode/prob_model.hpp"

namespace quantacode::detail {

/// Sum-constrained min-max rounding of t * p with reusable scratch space.
/// One instance per thread.
class MinMaxRounder {
 public:
  explicit MinMaxRounder(const ProbabilityVector& p);

  /// Fills `freqs` (indexed by symbol) and returns max_i |t a_i - f_i B|.
  const Integer& round(std::uint64_t t, std::vector<std::uint64_t>& freqs);

  /// Signed t a_i - f_i B of the last round() call.
  const std::vector<Integer>& signed_errors() const noexcept { return err_; }

  /// Double estimate of D(p || f/t) in nats for the last round() call,
  /// summed as non-negative terms p_i g(x_i) with g(x) = -log1p(-x) - x and
  /// x_i = delta_i / p_i, so it keeps full relative accuracy near zero.
  double divergence_estimate(std::uint64_t t) const;

 private:
  const ProbabilityVector* p_;
  std::vector<Integer> err_;
  std::vector<std::size_t> idx_;
  Integer quotient_;
  Integer scratch_;
  Integer worst_;
  Integer donor_error_;
  std::vector<double> p_double_;
  std::vector<double> scaled_double_;
};

}  // namespace quantacode::detail
