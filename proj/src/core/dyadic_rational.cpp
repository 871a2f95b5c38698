#include "dyadic/core/dyadic_rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace dyadic {

DyadicRational::DyadicRational(BigInt numerator, unsigned exponent)
    : num_(std::move(numerator)), exp_(exponent) {
  canonicalize();
}

DyadicRational DyadicRational::pow2(int power) {
  if (power >= 0) {
    return {BigInt(1) << power, 0};
  }
  return {BigInt(1), static_cast<unsigned>(-power)};
}

void DyadicRational::canonicalize() {
  if (num_.is_zero()) {
    exp_ = 0;
    return;
  }
  if (exp_ == 0) {
    return;
  }
  // lsb() counts trailing zeros of |num|
  const unsigned tz = static_cast<unsigned>(boost::multiprecision::lsb(abs(num_)));
  const unsigned shift = tz < exp_ ? tz : exp_;
  if (shift > 0) {
    num_ >>= shift;  // exact: the shifted bits are zero, so sign is preserved
    exp_ -= shift;
  }
}

DyadicRational& DyadicRational::operator+=(const DyadicRational& rhs) {
  if (exp_ >= rhs.exp_) {
    num_ += rhs.num_ << (exp_ - rhs.exp_);
  } else {
    num_ = (num_ << (rhs.exp_ - exp_)) + rhs.num_;
    exp_ = rhs.exp_;
  }
  canonicalize();
  return *this;
}

BigInt DyadicRational::floor() const {
  if (exp_ == 0) {
    return num_;
  }
  // cpp_int >> on negatives truncates toward zero, so do the floor by hand.
  BigInt q = abs(num_) >> exp_;
  if (num_ < 0) {
    q = -q;
    if ((q << exp_) != num_) {
      q -= 1;
    }
  }
  return q;
}

DyadicRational DyadicRational::frac() const {
  return *this - DyadicRational(floor(), 0);
}

double DyadicRational::to_double() const {
  using Float = boost::multiprecision::cpp_bin_float_double_extended;
  Float v(num_);
  v = ldexp(v, -static_cast<int>(exp_));
  return v.convert_to<double>();
}

std::string DyadicRational::str() const {
  if (exp_ == 0) {
    return num_.str();
  }
  return num_.str() + "/2^" + std::to_string(exp_);
}

std::strong_ordering operator<=>(const DyadicRational& lhs, const DyadicRational& rhs) {
  const unsigned e = lhs.exp_ > rhs.exp_ ? lhs.exp_ : rhs.exp_;
  const BigInt a = lhs.num_ << (e - lhs.exp_);
  const BigInt b = rhs.num_ << (e - rhs.exp_);
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace dyadic
