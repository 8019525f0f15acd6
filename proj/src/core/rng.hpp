// Copyright 2026 The linrelu Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace linrelu {

// Counter-based generator: draw i of stream s under seed k is
//   splitmix64(key(k, s) + (i + 1) * 0x9e3779b97f4a7c15)
// with key(k, s) = splitmix64(k) ^ splitmix64(s ^ 0xd1b54a32d192ed03).
// Every draw is a pure function of (seed, stream, counter), so sequences are
// reproducible across platforms and independent of call order.
std::uint64_t splitmix64(std::uint64_t z) noexcept;

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t at(std::uint64_t counter) const noexcept;
  std::uint64_t next_u64() noexcept { return at(counter_++); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  // Standard normal via Box-Muller; consumes two draws.
  double normal() noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace linrelu
