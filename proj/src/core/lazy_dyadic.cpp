#include "dyadic/core/lazy_dyadic.hpp"

#include "dyadic/core/errors.hpp"
#include "dyadic/core/hash.hpp"

#include <algorithm>
#include <vector>

namespace dyadic {

BitProvider BitProvider::zero_tail(Word suffix) {
  BitProvider p;
  p.kind_ = Kind::ZeroTail;
  p.suffix_ = std::move(suffix);
  return p;
}

BitProvider BitProvider::periodic_tail(Word suffix, Word period) {
  if (period.empty()) throw DomainError("BitProvider: empty period");
  const auto& b = period.bits();
  if (std::all_of(b.begin(), b.end(), [](std::uint8_t x) { return x == 0; })) {
    return zero_tail(std::move(suffix));
  }
  BitProvider p;
  p.kind_ = Kind::PeriodicTail;
  p.suffix_ = std::move(suffix);
  p.period_ = std::move(period);
  return p;
}

BitProvider BitProvider::seeded(std::uint64_t seed, Word suffix, std::uint64_t offset) {
  BitProvider p;
  p.kind_ = Kind::SeededRandom;
  p.seed_ = seed;
  p.suffix_ = std::move(suffix);
  p.offset_ = offset;
  return p;
}

std::uint8_t BitProvider::bit(std::uint64_t j) const {
  const std::uint64_t s = suffix_.depth();
  if (j < s) return suffix_.bit(s - 1 - j);
  const std::uint64_t t = j - s;
  switch (kind_) {
    case Kind::ZeroTail:
      return 0;
    case Kind::PeriodicTail: {
      const std::uint64_t p = period_.depth();
      return period_.bit(p - 1 - t % p);
    }
    case Kind::SeededRandom:
      return static_cast<std::uint8_t>(mix64(seed_, offset_ + t) >> 63);
  }
  return 0;
}

const char* to_string(BitProvider::Kind kind) {
  switch (kind) {
    case BitProvider::Kind::ZeroTail: return "zero";
    case BitProvider::Kind::PeriodicTail: return "periodic";
    case BitProvider::Kind::SeededRandom: return "seeded";
  }
  return "?";
}

LazyDyadic::LazyDyadic() : LazyDyadic(BitProvider::zero_tail()) {}

LazyDyadic::LazyDyadic(BitProvider provider)
    : provider_(std::make_shared<const BitProvider>(std::move(provider))) {}

void LazyDyadic::absorb_one() {
  const std::int64_t s = provider_->bit(consumed_) + pending_;
  window_.push_front(static_cast<std::uint8_t>(s & 1));
  pending_ = s >> 1;  // floor division
  ++consumed_;
}

std::uint8_t LazyDyadic::bit(std::uint64_t j) const {
  const std::uint64_t w = window_.size();
  if (j < w) return window_[w - 1 - j];
  std::int64_t p = pending_;
  for (std::uint64_t t = 0;; ++t) {
    const std::int64_t s = provider_->bit(consumed_ + t) + p;
    if (t == j - w) return static_cast<std::uint8_t>(s & 1);
    p = s >> 1;
  }
}

Word LazyDyadic::low_bits(std::size_t k) const {
  std::vector<std::uint8_t> bits(k);
  const std::size_t w = window_.size();
  std::int64_t p = pending_;
  for (std::size_t j = 0; j < k; ++j) {
    std::uint8_t b;
    if (j < w) {
      b = window_[w - 1 - j];
    } else {
      const std::int64_t s = provider_->bit(consumed_ + (j - w)) + p;
      b = static_cast<std::uint8_t>(s & 1);
      p = s >> 1;
    }
    bits[k - 1 - j] = b;
  }
  return Word(std::move(bits));
}

BigInt LazyDyadic::low_value(std::size_t k) const { return low_bits(k).value(); }

void LazyDyadic::add(int delta) {
  if (delta != 1 && delta != -1) throw DomainError("LazyDyadic::add: delta must be +1 or -1");
  const std::uint8_t ripple = delta > 0 ? 1 : 0;
  for (auto it = window_.rbegin(); it != window_.rend(); ++it) {
    if (*it == ripple) {
      *it = 1 - ripple;
    } else {
      *it = ripple;
      return;
    }
  }
  pending_ += delta;
}

void LazyDyadic::div2() {
  if (window_.empty()) absorb_one();
  if (window_.back() != 0) throw ParityError("LazyDyadic::div2: odd value");
  window_.pop_back();
}

void LazyDyadic::drop_last() {
  if (window_.empty()) absorb_one();
  window_.pop_back();
}

namespace {

Word window_word(const std::deque<std::uint8_t>& window) {
  return Word(std::vector<std::uint8_t>(window.begin(), window.end()));
}

std::vector<std::uint8_t> rotated_period(const BitProvider& p, std::uint64_t start) {
  // New block whose units bit is the old tail bit at index `start`.
  const std::uint64_t len = p.period().depth();
  std::vector<std::uint8_t> out(len);
  for (std::uint64_t t = 0; t < len; ++t) out[len - 1 - t] = p.bit(start + t);
  return out;
}

}  // namespace

nlohmann::json LazyDyadic::to_json() const {
  LazyDyadic c = *this;
  const BitProvider& p = *c.provider_;
  const std::uint64_t s = p.suffix().depth();
  const std::uint64_t plen = std::max<std::uint64_t>(p.period().depth(), 1);
  const std::uint64_t limit = s + 2 * plen + 256;
  for (std::uint64_t i = 0; (c.consumed_ < s || c.pending_ != 0) && i < limit; ++i) c.absorb_one();

  nlohmann::json j;
  j["suffix"] = window_word(c.window_).str();
  if (p.kind() == BitProvider::Kind::SeededRandom) {
    if (c.pending_ != 0) throw StructureError("LazyDyadic::to_json: carry did not settle");
    j["kind"] = "seeded";
    j["seed"] = p.seed();
    j["offset"] = p.offset() + (c.consumed_ - s);
    return j;
  }

  std::vector<std::uint8_t> block =
      p.kind() == BitProvider::Kind::ZeroTail ? std::vector<std::uint8_t>{0}
                                               : rotated_period(p, c.consumed_);
  if (c.pending_ != 0) {
    // Tail + pending is periodic with block r - pending * (2^len - 1), when that fits.
    const BigInt full = (BigInt(1) << block.size()) - 1;
    const BigInt n = Word(block).value() - BigInt(c.pending_) * full;
    if (n < 0 || n > full) throw StructureError("LazyDyadic::to_json: carry did not settle");
    std::vector<std::uint8_t> nb(block.size());
    for (std::size_t i = 0; i < block.size(); ++i) {
      nb[block.size() - 1 - i] = static_cast<std::uint8_t>(bit_test(n, static_cast<unsigned>(i)));
    }
    block = std::move(nb);
  }
  if (std::all_of(block.begin(), block.end(), [](std::uint8_t x) { return x == 0; })) {
    j["kind"] = "zero";
  } else {
    j["kind"] = "periodic";
    j["period"] = Word(block).str();
  }
  return j;
}

LazyDyadic LazyDyadic::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  Word suffix = Word::parse(j.value("suffix", std::string("~")));
  if (kind == "zero") return LazyDyadic(BitProvider::zero_tail(std::move(suffix)));
  if (kind == "periodic") {
    return LazyDyadic(BitProvider::periodic_tail(std::move(suffix), Word::parse(j.at("period").get<std::string>())));
  }
  if (kind == "seeded") {
    return LazyDyadic(BitProvider::seeded(j.at("seed").get<std::uint64_t>(), std::move(suffix),
                                          j.value("offset", std::uint64_t{0})));
  }
  throw DomainError("LazyDyadic::from_json: unknown kind '" + kind + "'");
}

LazyDyadic lazy_arith(const LazyDyadic& a, LazyOp op) {
  LazyDyadic out = a;
  switch (op) {
    case LazyOp::Add1: out.add(1); break;
    case LazyOp::Sub1: out.add(-1); break;
    case LazyOp::Mul2: out.mul2(); break;
    case LazyOp::Div2: out.div2(); break;
  }
  return out;
}

}  // namespace dyadic
