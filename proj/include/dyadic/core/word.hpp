#pragma once

#include "dyadic/core/dyadic_rational.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace dyadic {

/// Finite binary string, most significant bit first. The empty word is the
/// root of the wrapped graph and prints as "~".
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<std::uint8_t> bits);

  /// Parses "0110" or "~". Throws DomainError on any other character.
  static Word parse(std::string_view text);
  /// Word of the given depth whose value is `value` (low `depth` bits kept).
  static Word from_value(std::uint64_t value, unsigned depth);

  std::size_t depth() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  /// i-th bit counted from the most significant end.
  std::uint8_t bit(std::size_t i) const { return bits_[i]; }
  std::uint8_t last_bit() const { return bits_.back(); }
  bool is_even() const { return bits_.empty() || bits_.back() == 0; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  BigInt value() const;
  /// Value as a machine integer; requires depth <= 64.
  std::uint64_t value_u64() const;
  std::string str() const;

  /// In-place (v + delta) mod 2^depth. Returns the carry that left the word:
  /// +1 on wrap past 2^depth - 1, -1 on wrap below 0, otherwise 0.
  int add(int delta);
  void push_back(std::uint8_t b) { bits_.push_back(b); }
  void pop_back();

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    if (a.depth() != b.depth()) return a.depth() <=> b.depth();
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

enum class Shift { Append0, Append1, Pop };

Word word_add(const Word& w, int delta);
Word word_shift(const Word& w, Shift dir);
DyadicRational position_of(const Word& w);

}  // namespace dyadic

template <>
struct std::hash<dyadic::Word> {
  std::size_t operator()(const dyadic::Word& w) const noexcept;
};
