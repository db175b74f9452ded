#pragma once

// Extended-exponent real and complex arithmetic.
//
// Orbits of the shift-like families decay like c^(2^n), which leaves the
// native double range after a dozen steps. ExtReal keeps a double mantissa
// in [1,2) and a 64-bit binary exponent, so only the dynamic range is
// widened; relative precision stays that of a double.

#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>

namespace shortck {

/// Natural log of a magnitude. -inf marks an exact zero, +inf an overflow.
struct LogMag {
  double value = -std::numeric_limits<double>::infinity();

  static constexpr LogMag zero() { return {}; }
  static constexpr LogMag overflow() { return {std::numeric_limits<double>::infinity()}; }

  bool is_zero() const { return value == -std::numeric_limits<double>::infinity(); }
  bool is_overflow() const { return value == std::numeric_limits<double>::infinity(); }

  friend LogMag operator+(LogMag a, LogMag b) { return {a.value + b.value}; }
  friend auto operator<=>(const LogMag&, const LogMag&) = default;
};

class ExtReal {
 public:
  // Finite values have exponents in [kMinExp, kMaxExp). Below that range a
  // result flushes to zero; at or above it saturates with the sticky
  // overflow flag. Sums of two valid exponents never wrap an int64.
  static constexpr std::int64_t kMaxExp = std::int64_t{1} << 62;
  static constexpr std::int64_t kMinExp = -(std::int64_t{1} << 62);
  // Exponent gap beyond which a sum equals its larger operand exactly.
  static constexpr std::int64_t kAddGap = 64 + 53;

  constexpr ExtReal() = default;

  /// Exact embedding of a finite double. Throws std::domain_error on NaN/inf.
  static ExtReal from_native(double x);

  /// Normalizes mantissa*2^exp2 (mantissa any finite double).
  static ExtReal from_parts(double mantissa, std::int64_t exp2);

  static ExtReal overflowed(int sign = 1) {
    ExtReal r;
    r.mant_ = sign < 0 ? -1.0 : 1.0;
    r.exp_ = kMaxExp;
    r.overflow_ = true;
    return r;
  }

  /// e^(log.value); saturates to kMinExp instead of flushing so that
  /// tiny coefficients stay invertible.
  static ExtReal from_log(LogMag log);

  int sign() const { return mant_ > 0 ? 1 : (mant_ < 0 ? -1 : 0); }
  /// |mantissa| in [1,2), or 0 for zero.
  double mantissa() const { return std::fabs(mant_); }
  double signed_mantissa() const { return mant_; }
  std::int64_t exp2() const { return exp_; }
  bool is_zero() const { return mant_ == 0.0; }
  bool is_overflow() const { return overflow_; }

  /// Nearest double; +-inf past the native range, 0 below it.
  double to_native() const;

  LogMag log_abs() const;

  ExtReal abs() const {
    ExtReal r = *this;
    r.mant_ = std::fabs(r.mant_);
    return r;
  }

  ExtReal operator-() const {
    ExtReal r = *this;
    r.mant_ = -r.mant_;
    return r;
  }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }
  friend ExtReal operator*(const ExtReal& a, const ExtReal& b);
  /// Throws std::domain_error on division by zero.
  friend ExtReal operator/(const ExtReal& a, const ExtReal& b);

  ExtReal& operator+=(const ExtReal& b) { return *this = *this + b; }
  ExtReal& operator-=(const ExtReal& b) { return *this = *this - b; }
  ExtReal& operator*=(const ExtReal& b) { return *this = *this * b; }

  friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b);
  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.mant_ == b.mant_ && (a.mant_ == 0.0 || a.exp_ == b.exp_) && a.overflow_ == b.overflow_;
  }

  std::string debug_string() const;

 private:
  static ExtReal normalized(double m, std::int64_t e);

  double mant_ = 0.0;  // signed; |mant_| in [1,2) unless zero
  std::int64_t exp_ = 0;
  bool overflow_ = false;
};

struct ExtComplex {
  ExtReal re;
  ExtReal im;

  constexpr ExtComplex() = default;
  ExtComplex(ExtReal r, ExtReal i) : re(r), im(i) {}
  explicit ExtComplex(ExtReal r) : re(r) {}

  static ExtComplex from_native(std::complex<double> z) {
    return {ExtReal::from_native(z.real()), ExtReal::from_native(z.imag())};
  }
  static ExtComplex from_native(double re, double im = 0.0) {
    return {ExtReal::from_native(re), ExtReal::from_native(im)};
  }

  std::complex<double> to_native() const { return {re.to_native(), im.to_native()}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_overflow() const { return re.is_overflow() || im.is_overflow(); }

  /// |z| without intermediate overflow.
  ExtReal modulus() const;

  ExtComplex conj() const { return {re, -im}; }
  ExtComplex operator-() const { return {-re, -im}; }

  friend ExtComplex operator+(const ExtComplex& a, const ExtComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ExtComplex operator-(const ExtComplex& a, const ExtComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExtComplex operator*(const ExtComplex& a, const ExtComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ExtComplex operator*(const ExtReal& s, const ExtComplex& b) {
    return {s * b.re, s * b.im};
  }
  friend ExtComplex operator/(const ExtComplex& a, const ExtReal& s) {
    return {a.re / s, a.im / s};
  }
  friend ExtComplex operator/(const ExtComplex& a, const ExtComplex& b);

  friend bool operator==(const ExtComplex& a, const ExtComplex& b) = default;
};

ExtComplex ext_add(const ExtComplex& a, const ExtComplex& b);
ExtComplex ext_mul(const ExtComplex& a, const ExtComplex& b);
LogMag log_modulus(const ExtComplex& a);
ExtComplex from_native(double re, double im);

// ---------------------------------------------------------------------------
// Inline hot paths.

inline ExtReal ExtReal::normalized(double m, std::int64_t e) {
  ExtReal r;
  if (m == 0.0) return r;
  int fe = 0;
  const double fm = std::frexp(m, &fe);  // |fm| in [0.5,1)
  r.mant_ = fm * 2.0;
  // e is within +-2^63 - 2^62 in all callers, so this cannot wrap.
  const std::int64_t ne = e + (fe - 1);
  if (ne >= kMaxExp) return overflowed(m < 0 ? -1 : 1);
  if (ne < kMinExp) return ExtReal{};
  r.exp_ = ne;
  return r;
}

inline ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  if (a.overflow_ || b.overflow_) {
    if (a.overflow_ && b.overflow_ && a.sign() != b.sign()) return ExtReal::overflowed(1);
    return a.overflow_ ? a : b;
  }
  if (b.mant_ == 0.0) return a;
  if (a.mant_ == 0.0) return b;
  const ExtReal& hi = a.exp_ >= b.exp_ ? a : b;
  const ExtReal& lo = a.exp_ >= b.exp_ ? b : a;
  const std::int64_t gap = hi.exp_ - lo.exp_;  // both in [kMinExp,kMaxExp]
  if (gap > ExtReal::kAddGap) return hi;
  const double m = hi.mant_ + std::ldexp(lo.mant_, -static_cast<int>(gap));
  return ExtReal::normalized(m, hi.exp_);
}

inline ExtReal operator*(const ExtReal& a, const ExtReal& b) {
  if (a.overflow_ || b.overflow_) {
    if (a.mant_ == 0.0 || b.mant_ == 0.0) return ExtReal{};
    return ExtReal::overflowed(a.sign() * b.sign());
  }
  if (a.mant_ == 0.0 || b.mant_ == 0.0) return ExtReal{};
  return ExtReal::normalized(a.mant_ * b.mant_, a.exp_ + b.exp_);
}

}  // namespace shortck
