#pragma once

#include "dyadic/core/dyadic_rational.hpp"
#include "dyadic/core/word.hpp"

#include "json.hpp"

#include <cstdint>
#include <deque>
#include <memory>
#include <string>

namespace dyadic {

/// Deterministic source for the bits a_0, a_{-1}, a_{-2}, ... of a dyadic
/// integer. Index j here means a_{-j}; j = 0 is the units bit.
///
/// The low bits come from `suffix` (MSB-first, so its last character is a_0).
/// Above the suffix the tail is zero, a repeated `period` block, or a
/// pseudorandom stream keyed by (seed, offset + j - |suffix|).
class BitProvider {
 public:
  enum class Kind { ZeroTail, PeriodicTail, SeededRandom };

  static BitProvider zero_tail(Word suffix = {});
  static BitProvider periodic_tail(Word suffix, Word period);
  static BitProvider seeded(std::uint64_t seed, Word suffix = {}, std::uint64_t offset = 0);

  Kind kind() const { return kind_; }
  const Word& suffix() const { return suffix_; }
  const Word& period() const { return period_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t offset() const { return offset_; }

  std::uint8_t bit(std::uint64_t j) const;
  /// Eventually periodic tails give graphs with nontrivial automorphisms.
  bool eventually_periodic() const { return kind_ != Kind::SeededRandom; }

 private:
  Kind kind_ = Kind::ZeroTail;
  Word suffix_;
  Word period_;
  std::uint64_t seed_ = 0;
  std::uint64_t offset_ = 0;
};

const char* to_string(BitProvider::Kind kind);

enum class LazyOp { Add1, Sub1, Mul2, Div2 };

/// Left-infinite bit string with exact 2-adic arithmetic.
///
/// Value = window + 2^W * (provider >> consumed + pending), where the window
/// holds the W lowest bits (front = most significant) and `pending` is the
/// integer carry that has not yet been pushed into provider territory.
/// Copies are cheap to share: the provider is immutable and reference counted.
class LazyDyadic {
 public:
  LazyDyadic();
  explicit LazyDyadic(BitProvider provider);

  static LazyDyadic from_json(const nlohmann::json& j);
  /// Canonical form: pending carry absorbed, periodic tails phase-aligned.
  nlohmann::json to_json() const;

  std::uint8_t bit(std::uint64_t j) const;
  bool is_even() const { return bit(0) == 0; }
  /// Low k bits as a word, a_{-k+1} first and a_0 last.
  Word low_bits(std::size_t k) const;
  BigInt low_value(std::size_t k) const;

  void add(int delta);
  void mul2() { window_.push_back(0); }
  void append(std::uint8_t b) { window_.push_back(b); }
  /// Exact halving; throws ParityError on odd values.
  void div2();
  /// floor(a / 2): removes a_0 whatever its value.
  void drop_last();

  std::size_t window_size() const { return window_.size(); }
  const BitProvider& provider() const { return *provider_; }

 private:
  void absorb_one();

  std::shared_ptr<const BitProvider> provider_;
  std::deque<std::uint8_t> window_;
  std::uint64_t consumed_ = 0;
  std::int64_t pending_ = 0;
};

LazyDyadic lazy_arith(const LazyDyadic& a, LazyOp op);

}  // namespace dyadic
