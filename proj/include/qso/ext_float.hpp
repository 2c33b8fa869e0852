#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>

namespace qso {

// Floating-point scalar with a 53-bit IEEE-754 mantissa and a 64-bit binary
// exponent, stored as value = frac * 2^exp with frac either 0 or normalized
// to +-[0.5, 1).
//
// Why it exists: Zakharevich trajectories from interior points spend long
// stretches near a vertex during which the off-vertex coordinates square
// every generation, so their binary exponents fall below -10^11 within a
// few hundred thousand steps. IEEE doubles underflow to exact zero near
// exponent -1074, which silently absorbs the orbit at the vertex and
// destroys the very oscillation the experiment measures. This type keeps
// the 53-bit rounding behavior of double while extending the exponent range
// far enough that no realistic horizon underflows.
//
// Equivalence contract (tested): for finite inputs whose exact IEEE result
// is a normal double, +, -, *, / and comparisons here produce bit-identical
// results to the corresponding double operations. The two evaluation lanes
// of the library therefore agree exactly until the double lane underflows.
//
// Exponents saturate at +-2^62 (far beyond any representable horizon's
// reach); values pushed below the floor collapse to exact zero, mirroring
// double underflow at an astronomically deeper threshold.
class ExtFloat {
 public:
  constexpr ExtFloat() noexcept : frac_(0.0), exp_(0) {}

  static ExtFloat from_double(double v) noexcept { return normalized(v, 0); }

  // Nearest double, rounding through ldexp; overflows to +-infinity and
  // underflows through the subnormal range to +-0 exactly like IEEE.
  double to_double() const noexcept {
    if (frac_ == 0.0) return 0.0;
    if (exp_ > 1100) return frac_ > 0.0 ? HUGE_VAL : -HUGE_VAL;
    if (exp_ < -1100) return frac_ > 0.0 ? 0.0 : -0.0;
    return std::ldexp(frac_, static_cast<int>(exp_));
  }

  double fraction() const noexcept { return frac_; }
  std::int64_t exponent() const noexcept { return exp_; }
  bool is_zero() const noexcept { return frac_ == 0.0; }

  friend ExtFloat operator+(ExtFloat a, ExtFloat b) noexcept {
    if (a.frac_ == 0.0) return b;
    if (b.frac_ == 0.0) return a;
    if (b.exp_ > a.exp_) {
      const ExtFloat t = a;
      a = b;
      b = t;
    }
    const std::int64_t gap = a.exp_ - b.exp_;
    // Beyond the alignment window the addend is below half an ulp of the
    // larger operand and the IEEE sum would round back to it exactly.
    if (gap > kAlignmentWindow) return a;
    return normalized(a.frac_ + std::ldexp(b.frac_, -static_cast<int>(gap)), a.exp_);
  }

  friend ExtFloat operator-(ExtFloat a, ExtFloat b) noexcept { return a + (-b); }

  friend ExtFloat operator-(ExtFloat a) noexcept {
    a.frac_ = -a.frac_;
    return a;
  }

  friend ExtFloat operator*(ExtFloat a, ExtFloat b) noexcept {
    if (a.frac_ == 0.0 || b.frac_ == 0.0) return ExtFloat();
    // Product of two fractions in +-[0.5,1) lies in +-[0.25,1): one IEEE
    // rounding, then at most a one-bit renormalization shift.
    return normalized(a.frac_ * b.frac_, saturating_add(a.exp_, b.exp_));
  }

  friend ExtFloat operator/(ExtFloat a, ExtFloat b) noexcept {
    assert(b.frac_ != 0.0 && "division by zero ExtFloat");
    if (a.frac_ == 0.0) return ExtFloat();
    return normalized(a.frac_ / b.frac_, saturating_add(a.exp_, -b.exp_));
  }

  // Normalized form is unique, so equality is structural.
  friend bool operator==(const ExtFloat& a, const ExtFloat& b) noexcept {
    return a.frac_ == b.frac_ && a.exp_ == b.exp_;
  }

  friend bool operator<(const ExtFloat& a, const ExtFloat& b) noexcept {
    const int sa = a.sign_class();
    const int sb = b.sign_class();
    if (sa != sb) return sa < sb;
    if (sa == 0) return false;
    if (a.exp_ != b.exp_) return sa > 0 ? a.exp_ < b.exp_ : a.exp_ > b.exp_;
    return a.frac_ < b.frac_;
  }

  friend bool operator>(const ExtFloat& a, const ExtFloat& b) noexcept { return b < a; }
  friend bool operator<=(const ExtFloat& a, const ExtFloat& b) noexcept { return !(b < a); }
  friend bool operator>=(const ExtFloat& a, const ExtFloat& b) noexcept { return !(a < b); }

  friend ExtFloat abs(ExtFloat a) noexcept {
    a.frac_ = std::fabs(a.frac_);
    return a;
  }

 private:
  // Addends whose exponents differ by more than this cannot influence the
  // rounded sum (53-bit mantissa plus guard margin).
  static constexpr std::int64_t kAlignmentWindow = 60;
  static constexpr std::int64_t kExponentCap = std::int64_t{1} << 62;

  ExtFloat(double f, std::int64_t e) noexcept : frac_(f), exp_(e) {}

  // Stored exponents stay within +-2^62, so a single sum cannot wrap int64;
  // the saturating form keeps that true even for adversarial chains of
  // multiplies at the cap.
  static std::int64_t saturating_add(std::int64_t a, std::int64_t b) noexcept {
    std::int64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) return a > 0 ? kExponentCap : -kExponentCap;
    return r;
  }

  static ExtFloat normalized(double f, std::int64_t e) noexcept {
    if (f == 0.0) return ExtFloat();
    int shift = 0;
    const double frac = std::frexp(f, &shift);
    e += shift;
    if (e >= kExponentCap) e = kExponentCap;   // sticky saturation
    if (e <= -kExponentCap) return ExtFloat(); // deep underflow -> hard zero
    return ExtFloat(frac, e);
  }

  int sign_class() const noexcept { return frac_ > 0.0 ? 1 : (frac_ < 0.0 ? -1 : 0); }

  double frac_;
  std::int64_t exp_;
};

}  // namespace qso
