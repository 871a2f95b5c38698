#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace dyadic {

using BigInt = boost::multiprecision::cpp_int;

/// Exact value numerator / 2^exponent.
///
/// Always stored in canonical form: the numerator is odd, or the exponent is
/// zero. Equality of values is therefore equality of representations.
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(BigInt numerator, unsigned exponent);

  static DyadicRational integer(std::int64_t value) { return {BigInt(value), 0}; }
  /// 2^power for any integer power.
  static DyadicRational pow2(int power);

  const BigInt& numerator() const { return num_; }
  unsigned exponent() const { return exp_; }

  bool is_zero() const { return num_.is_zero(); }
  BigInt floor() const;
  /// Representative of the value modulo 1, in [0, 1).
  DyadicRational frac() const;
  double to_double() const;
  /// "n" when the exponent is zero, otherwise "n/2^e".
  std::string str() const;

  DyadicRational operator-() const { return {-num_, exp_}; }
  DyadicRational& operator+=(const DyadicRational& rhs);
  DyadicRational& operator-=(const DyadicRational& rhs) { return *this += -rhs; }
  friend DyadicRational operator+(DyadicRational lhs, const DyadicRational& rhs) { return lhs += rhs; }
  friend DyadicRational operator-(DyadicRational lhs, const DyadicRational& rhs) { return lhs -= rhs; }

  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
  friend std::strong_ordering operator<=>(const DyadicRational& lhs, const DyadicRational& rhs);

 private:
  void canonicalize();

  BigInt num_ = 0;
  unsigned exp_ = 0;
};

}  // namespace dyadic
