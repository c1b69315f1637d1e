#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace opsim {

/// Single-pass mean/variance accumulator (Welford recurrence).
///
/// The standard error reads as +infinity until two points exist, so stopping
/// rules can compare it against any finite threshold without a special case.
class StatAccumulator {
 public:
  void update(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);  // delta and (x - mean') share a sign, so m2 stays >= 0
  }

  std::uint64_t count() const { return n_; }

  double mean() const { return mean_; }

  /// Sum of squared deviations from the running mean.
  double m2() const { return m2_; }

  /// Unbiased sample variance; +infinity sentinel for n < 2.
  double variance() const {
    if (n_ < 2) return std::numeric_limits<double>::infinity();
    return m2_ / static_cast<double>(n_ - 1);
  }

  double stddev() const { return std::sqrt(variance()); }

  /// Standard error of the mean: sd / sqrt(n). +infinity for n < 2.
  double standard_error() const {
    if (n_ < 2) return std::numeric_limits<double>::infinity();
    return std::sqrt(m2_ / static_cast<double>(n_ - 1) / static_cast<double>(n_));
  }

  /// Pooled accumulator equivalent to feeding both underlying sequences
  /// through a single accumulator. Merging with an empty accumulator is an
  /// exact identity.
  static StatAccumulator merged(const StatAccumulator& a, const StatAccumulator& b) {
    if (a.n_ == 0) return b;
    if (b.n_ == 0) return a;
    StatAccumulator out;
    out.n_ = a.n_ + b.n_;
    const double delta = b.mean_ - a.mean_;
    const double na = static_cast<double>(a.n_);
    const double nb = static_cast<double>(b.n_);
    const double n = static_cast<double>(out.n_);
    out.mean_ = a.mean_ + delta * nb / n;
    out.m2_ = a.m2_ + b.m2_ + delta * delta * na * nb / n;
    return out;
  }

  bool operator==(const StatAccumulator&) const = default;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace opsim
