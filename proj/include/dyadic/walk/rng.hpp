#pragma once

#include "dyadic/core/hash.hpp"

#include <cstdint>
#include <limits>

namespace dyadic {

__extension__ using uint128 = unsigned __int128;

/// Counter-based generator keyed by (experiment seed, stream index). Every
/// walker gets its own stream, so results do not depend on scheduling.
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng() : CounterRng(0, 0) {}
  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix64(seed, stream)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix64(key_ + 0x9e3779b97f4a7c15ULL * counter_++); }

  /// Uniform integer in [0, n) by multiply-shift; bias is below 2^-58 for n <= 64.
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>((static_cast<uint128>((*this)()) * n) >> 64);
  }

  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dyadic
