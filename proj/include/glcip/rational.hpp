#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace glcip {

/**
 * Exact rational with small components, used for the coverage fraction,
 * the activation exponent and the rewiring probability. Keeping these
 * exact avoids any floating-point drift in coverage targets and in the
 * integer power certifications.
 */
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
    normalize();
  }
  explicit Rational(std::int64_t value) : num_(value), den_(1) {}

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool positive() const { return num_ > 0; }
  bool is_integer() const { return den_ == 1; }

  double as_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// ceil(this * factor) in exact integer arithmetic; requires *this >= 0.
  std::int64_t ceil_mul(std::int64_t factor) const {
    std::int64_t p = num_ * factor;
    std::int64_t q = p / den_;
    if (p % den_ != 0 && p > 0) ++q;
    return q;
  }

  /// floor(this * factor); requires *this >= 0.
  std::int64_t floor_mul(std::int64_t factor) const {
    std::int64_t p = num_ * factor;
    std::int64_t q = p / den_;
    if (p % den_ != 0 && p < 0) --q;
    return q;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ <= b.num_ * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  /**
   * Parses "3", "0.5", "1.1" or "p/q". Decimal strings become exact
   * fractions over a power of ten.
   */
  static Rational parse(const std::string& text);

  /**
   * Canonical text form: integers print bare, fractions with a power-of-ten
   * denominator print as decimals, anything else prints as "p/q".
   * parse(to_string(r)) == r.
   */
  std::string to_string() const;

 private:
  void normalize() {
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
    if (num_ == 0) den_ = 1;
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace glcip
