#include "shortck/num.hpp"

#include <algorithm>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace shortck {

ExtReal ExtReal::from_native(double x) {
  if (!std::isfinite(x)) throw std::domain_error("ExtReal::from_native: non-finite input");
  return normalized(x, 0);
}

ExtReal ExtReal::from_parts(double mantissa, std::int64_t exp2) {
  if (!std::isfinite(mantissa)) throw std::domain_error("ExtReal::from_parts: non-finite mantissa");
  exp2 = std::clamp(exp2, kMinExp - 64, kMaxExp + 64);
  return normalized(mantissa, exp2);
}

ExtReal ExtReal::from_log(LogMag log) {
  if (log.is_zero()) return {};
  if (log.is_overflow() || std::isnan(log.value)) return overflowed(1);
  const double t = log.value / std::numbers::ln2;
  const double whole = std::floor(t);
  if (whole >= static_cast<double>(kMaxExp)) return overflowed(1);
  if (whole < static_cast<double>(kMinExp)) {
    ExtReal r;
    r.mant_ = 1.0;
    r.exp_ = kMinExp;
    return r;
  }
  return normalized(std::exp2(t - whole), static_cast<std::int64_t>(whole));
}

double ExtReal::to_native() const {
  if (mant_ == 0.0) return 0.0;
  if (overflow_ || exp_ > 1100) return std::copysign(std::numeric_limits<double>::infinity(), mant_);
  if (exp_ < -1100) return std::copysign(0.0, mant_);
  return std::ldexp(mant_, static_cast<int>(exp_));
}

LogMag ExtReal::log_abs() const {
  if (mant_ == 0.0) return LogMag::zero();
  if (overflow_) return LogMag::overflow();
  return {std::log(std::fabs(mant_)) + static_cast<double>(exp_) * std::numbers::ln2};
}

ExtReal operator/(const ExtReal& a, const ExtReal& b) {
  if (b.mant_ == 0.0) throw std::domain_error("ExtReal: division by zero");
  if (a.mant_ == 0.0) return ExtReal{};
  if (a.overflow_) return ExtReal::overflowed(a.sign() * b.sign());
  if (b.overflow_) return ExtReal{};
  return ExtReal::normalized(a.mant_ / b.mant_, a.exp_ - b.exp_);
}

std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
  const int sa = a.sign();
  const int sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (sa == 0) return std::partial_ordering::equivalent;
  // Same sign: compare magnitudes, flipping for negatives.
  std::partial_ordering mag = std::partial_ordering::equivalent;
  if (a.overflow_ != b.overflow_) {
    mag = a.overflow_ ? std::partial_ordering::greater : std::partial_ordering::less;
  } else if (a.exp_ != b.exp_) {
    mag = a.exp_ <=> b.exp_;
  } else {
    mag = std::fabs(a.mant_) <=> std::fabs(b.mant_);
  }
  if (sa > 0) return mag;
  if (mag == std::partial_ordering::less) return std::partial_ordering::greater;
  if (mag == std::partial_ordering::greater) return std::partial_ordering::less;
  return mag;
}

std::string ExtReal::debug_string() const {
  char buf[96];
  if (overflow_) {
    std::snprintf(buf, sizeof buf, "%soverflow", mant_ < 0 ? "-" : "+");
  } else {
    std::snprintf(buf, sizeof buf, "%.17g*2^%lld", mant_, static_cast<long long>(exp_));
  }
  return buf;
}

ExtReal ExtComplex::modulus() const {
  if (is_overflow()) return ExtReal::overflowed(1);
  if (re.is_zero()) return im.abs();
  if (im.is_zero()) return re.abs();
  const std::int64_t e = std::max(re.exp2(), im.exp2());
  const auto shift = [e](const ExtReal& x) {
    const std::int64_t d = std::max<std::int64_t>(x.exp2() - e, -2000);
    return std::ldexp(x.mantissa(), static_cast<int>(d));
  };
  return ExtReal::from_parts(std::hypot(shift(re), shift(im)), e);
}

ExtComplex operator/(const ExtComplex& a, const ExtComplex& b) {
  // Smith-style scaling through the modulus keeps intermediates bounded.
  const ExtReal m = b.modulus();
  if (m.is_zero()) throw std::domain_error("ExtComplex: division by zero");
  const ExtComplex bs{b.re / m, b.im / m};
  const ExtComplex num = a * bs.conj();
  const ExtReal den = bs.re * bs.re + bs.im * bs.im;
  return {num.re / den / m, num.im / den / m};
}

ExtComplex ext_add(const ExtComplex& a, const ExtComplex& b) { return a + b; }

ExtComplex ext_mul(const ExtComplex& a, const ExtComplex& b) { return a * b; }

LogMag log_modulus(const ExtComplex& a) {
  if (a.is_overflow()) return LogMag::overflow();
  return a.modulus().log_abs();
}

ExtComplex from_native(double re, double im) { return ExtComplex::from_native(re, im); }

}  // namespace shortck
