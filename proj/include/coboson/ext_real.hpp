#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace coboson {

// Real number with a 64-bit binary exponent: value = mantissa * 2^exponent,
// 0.5 <= |mantissa| < 1 (or mantissa == 0). Used where symmetric functions
// of long spectra leave the double range in either direction.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  explicit ExtReal(double x) { assign(x, 0); }

  static ExtReal from_parts(double mantissa, std::int64_t exponent) {
    ExtReal r;
    r.assign(mantissa, exponent);
    return r;
  }

  double mantissa() const { return m_; }
  std::int64_t exponent() const { return e_; }
  bool is_zero() const { return m_ == 0.0; }
  bool is_finite() const { return std::isfinite(m_); }
  int sign() const { return (m_ > 0.0) - (m_ < 0.0); }

  // Natural log of |value|; -inf for zero.
  double log_abs() const {
    if (m_ == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(m_)) + static_cast<double>(e_) * std::numbers::ln2;
  }

  // May under/overflow.
  double to_double() const {
    if (e_ > 4096) return m_ > 0 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
    if (e_ < -4096) return 0.0;
    return std::ldexp(m_, static_cast<int>(e_));
  }

  ExtReal operator-() const { return from_parts(-m_, e_); }

  friend ExtReal operator*(const ExtReal& a, const ExtReal& b) {
    return from_parts(a.m_ * b.m_, a.e_ + b.e_);
  }
  friend ExtReal operator*(const ExtReal& a, double s) { return a * ExtReal(s); }
  friend ExtReal operator*(double s, const ExtReal& a) { return a * ExtReal(s); }
  friend ExtReal operator/(const ExtReal& a, const ExtReal& b) {
    return from_parts(a.m_ / b.m_, a.e_ - b.e_);
  }
  friend ExtReal operator/(const ExtReal& a, double s) { return a / ExtReal(s); }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.m_ == 0.0) return b;
    if (b.m_ == 0.0) return a;
    const std::int64_t shift = a.e_ - b.e_;
    // Anything more than 64 binades below the other operand is lost anyway.
    if (shift > 64) return a;
    if (shift < -64) return b;
    if (shift >= 0) return from_parts(a.m_ + std::ldexp(b.m_, static_cast<int>(-shift)), a.e_);
    return from_parts(std::ldexp(a.m_, static_cast<int>(shift)) + b.m_, b.e_);
  }
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }

  ExtReal& operator+=(const ExtReal& o) { return *this = *this + o; }
  ExtReal& operator-=(const ExtReal& o) { return *this = *this - o; }
  ExtReal& operator*=(const ExtReal& o) { return *this = *this * o; }
  ExtReal& operator*=(double s) { return *this = *this * s; }
  ExtReal& operator/=(double s) { return *this = *this / s; }

  // Ratio a/b as a double (finite whenever the ratio itself is representable).
  friend double ratio(const ExtReal& a, const ExtReal& b) { return (a / b).to_double(); }

  friend bool operator<(const ExtReal& a, const ExtReal& b) { return (a - b).m_ < 0.0; }

 private:
  void assign(double mantissa, std::int64_t exponent) {
    if (mantissa == 0.0 || !std::isfinite(mantissa)) {
      m_ = mantissa;
      e_ = 0;
      return;
    }
    int shift = 0;
    m_ = std::frexp(mantissa, &shift);
    e_ = exponent + shift;
  }

  double m_ = 0.0;
  std::int64_t e_ = 0;
};

}  // namespace coboson
