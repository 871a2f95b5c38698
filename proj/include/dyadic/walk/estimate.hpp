#pragma once

#include <cmath>
#include <cstdint>

namespace dyadic {

/// Mean of IID observations with its standard error. Merging uses the
/// pooled update of Chan et al., so it is associative and commutative up to
/// rounding, and exact in order when merged in a fixed order.
class Estimate {
 public:
  Estimate() = default;

  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }

  Estimate& merge(const Estimate& o) {
    if (o.n_ == 0) return *this;
    if (n_ == 0) return *this = o;
    const double n = static_cast<double>(n_ + o.n_);
    const double d = o.mean_ - mean_;
    mean_ += d * static_cast<double>(o.n_) / n;
    m2_ += o.m2_ + d * d * static_cast<double>(n_) * static_cast<double>(o.n_) / n;
    n_ += o.n_;
    return *this;
  }

  double value() const { return mean_; }
  std::uint64_t samples() const { return n_; }
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const { return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace dyadic
