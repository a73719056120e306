#include "glcip/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace glcip {

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::int64_t p = std::stoll(text.substr(0, slash));
    std::int64_t q = std::stoll(text.substr(slash + 1));
    return Rational(p, q);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    return Rational(std::stoll(text));
  }
  std::string integral = text.substr(0, dot);
  std::string frac = text.substr(dot + 1);
  for (char c : frac) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed decimal literal: " + text);
  }
  bool negative = !integral.empty() && integral[0] == '-';
  std::int64_t whole = integral.empty() || integral == "-" ? 0 : std::stoll(integral);
  if (whole < 0) whole = -whole;
  std::int64_t den = 1;
  std::int64_t num = whole;
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  if (negative) num = -num;
  return Rational(num, den);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  // Power-of-ten denominators (after reduction: 2^a * 5^b) have a finite
  // decimal expansion.
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
  int digits = twos > fives ? twos : fives;
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  std::int64_t scaled = num_ * (scale / den_);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string body = std::to_string(scaled);
  if (static_cast<int>(body.size()) <= digits)
    body.insert(0, digits + 1 - body.size(), '0');
  body.insert(body.size() - digits, ".");
  return (negative ? "-" : "") + body;
}

}  // namespace glcip
