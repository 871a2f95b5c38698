#include "dyadic/core/word.hpp"

#include "dyadic/core/errors.hpp"

namespace dyadic {

Word::Word(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw DomainError("Word: bit out of range");
  }
}

Word Word::parse(std::string_view text) {
  if (text == "~") return Word{};
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw DomainError("Word: cannot parse '" + std::string(text) + "'");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Word(std::move(bits));
}

Word Word::from_value(std::uint64_t value, unsigned depth) {
  std::vector<std::uint8_t> bits(depth);
  for (unsigned i = 0; i < depth; ++i) {
    bits[depth - 1 - i] = i < 64 ? static_cast<std::uint8_t>((value >> i) & 1U) : 0;
  }
  Word w;
  w.bits_ = std::move(bits);
  return w;
}

BigInt Word::value() const {
  BigInt v = 0;
  for (auto b : bits_) {
    v <<= 1;
    v += b;
  }
  return v;
}

std::uint64_t Word::value_u64() const {
  if (bits_.size() > 64) throw DomainError("Word::value_u64: depth exceeds 64");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string Word::str() const {
  if (bits_.empty()) return "~";
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
  return s;
}

int Word::add(int delta) {
  if (bits_.empty()) throw DomainError("word_add: the empty word has no horizontal neighbours");
  if (delta != 1 && delta != -1) throw DomainError("word_add: delta must be +1 or -1");
  // +1 turns trailing 1s into 0s; -1 turns trailing 0s into 1s.
  const std::uint8_t ripple = delta > 0 ? 1 : 0;
  for (std::size_t i = bits_.size(); i-- > 0;) {
    if (bits_[i] == ripple) {
      bits_[i] = 1 - ripple;
    } else {
      bits_[i] = ripple;
      return 0;
    }
  }
  return delta;
}

void Word::pop_back() {
  if (bits_.empty()) throw DomainError("word_shift: pop on the empty word");
  bits_.pop_back();
}

Word word_add(const Word& w, int delta) {
  Word out = w;
  out.add(delta);
  return out;
}

Word word_shift(const Word& w, Shift dir) {
  Word out = w;
  switch (dir) {
    case Shift::Append0: out.push_back(0); break;
    case Shift::Append1: out.push_back(1); break;
    case Shift::Pop: out.pop_back(); break;
  }
  return out;
}

DyadicRational position_of(const Word& w) {
  return DyadicRational(w.value(), static_cast<unsigned>(w.depth()));
}

}  // namespace dyadic

std::size_t std::hash<dyadic::Word>::operator()(const dyadic::Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL ^ w.depth();
  for (auto b : w.bits()) h = (h ^ b) * 0x100000001b3ULL;
  return h;
}
