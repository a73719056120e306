#include "glcip/exact_power.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

namespace glcip {

namespace {

using BigInt = boost::multiprecision::cpp_int;

BigInt ipow(std::int64_t base, std::int64_t exp) {
  BigInt b = base;
  BigInt r = 1;
  while (exp > 0) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

void require_positive_exponent(const Rational& gamma) {
  if (!gamma.positive()) throw std::invalid_argument("exponent must be positive");
}

}  // namespace

std::int64_t ceil_root_power(std::int64_t v, const Rational& gamma) {
  require_positive_exponent(gamma);
  if (v <= 0) return 0;
  const std::int64_t a = gamma.num();
  const std::int64_t b = gamma.den();
  if (a == b) return v;
  const BigInt target = ipow(v, b);
  auto c = static_cast<std::int64_t>(
      std::ceil(std::pow(static_cast<double>(v), static_cast<double>(b) / static_cast<double>(a)) - 0.5));
  if (c < 1) c = 1;
  while (ipow(c, a) < target) ++c;
  while (c > 1 && ipow(c - 1, a) >= target) --c;
  return c;
}

std::int64_t floor_power(std::int64_t v, const Rational& gamma) {
  require_positive_exponent(gamma);
  if (v <= 0) return 0;
  const std::int64_t a = gamma.num();
  const std::int64_t b = gamma.den();
  if (a == b) return v;
  const BigInt target = ipow(v, a);
  auto w = static_cast<std::int64_t>(
      std::floor(std::pow(static_cast<double>(v), gamma.as_double()) + 0.5));
  if (w < 0) w = 0;
  while (ipow(w + 1, b) <= target) ++w;
  while (w > 0 && ipow(w, b) > target) --w;
  return w;
}

std::int64_t round_power(std::int64_t v, const Rational& gamma) {
  require_positive_exponent(gamma);
  if (v <= 0) return 0;
  const std::int64_t a = gamma.num();
  const std::int64_t b = gamma.den();
  if (a == b) return v;
  // n = round(v^(a/b)): smallest n with (2n+1)^b > 2^b * v^a; an exact tie
  // (half) rounds away from zero.
  const BigInt doubled = ipow(2, b) * ipow(v, a);
  std::int64_t n = floor_power(v, gamma);  // v^gamma in [n, n+1)
  if (ipow(2 * n + 1, b) <= doubled) ++n;  // fractional part >= 1/2
  return n;
}

bool power_less_than(std::int64_t s, const Rational& gamma, std::int64_t t) {
  require_positive_exponent(gamma);
  if (t <= 0) return false;  // s^gamma >= 0 >= t
  if (s <= 0) return true;   // 0 < t
  return ipow(s, gamma.num()) < ipow(t, gamma.den());
}

}  // namespace glcip
