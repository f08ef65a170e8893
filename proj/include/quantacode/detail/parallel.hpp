// Copyright 2026 The quantacode Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace quantacode::detail {

/// Splits [begin, end) into at most `jobs` contiguous chunks and calls
/// fn(lo, hi) for each, on worker threads when jobs > 1. The first exception
/// thrown by any chunk is rethrown on the calling thread.
template <class Fn>
void parallel_chunks(std::uint64_t begin, std::uint64_t end, unsigned jobs, Fn&& fn) {
  if (end <= begin) return;
  const std::uint64_t n = end - begin;
  const std::uint64_t workers = std::clamp<std::uint64_t>(jobs, 1, n);
  if (workers == 1) {
    fn(begin, end);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t lo = begin + n * w / workers;
      const std::uint64_t hi = begin + n * (w + 1) / workers;
      threads.emplace_back([&, w, lo, hi] {
        try {
          fn(lo, hi);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace quantacode::detail
