#include <boost/multiprecision/cpp_int.hpp>

#include "doctest.h"
#include "glcip/exact_power.hpp"
#include "glcip/rational.hpp"

using glcip::Rational;

TEST_CASE("rational parsing and printing") {
  CHECK(Rational::parse("0.5") == Rational(1, 2));
  CHECK(Rational::parse("1.1") == Rational(11, 10));
  CHECK(Rational::parse("0.9") == Rational(9, 10));
  CHECK(Rational::parse("1") == Rational(1));
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("0.25") == Rational(1, 4));

  CHECK(Rational(1, 2).to_string() == "0.5");
  CHECK(Rational(11, 10).to_string() == "1.1");
  CHECK(Rational(1).to_string() == "1");
  CHECK(Rational(1, 3).to_string() == "1/3");
  CHECK(Rational(1, 4).to_string() == "0.25");

  for (const Rational& r : {Rational(9, 10), Rational(1, 3), Rational(7, 20), Rational(5)})
    CHECK(Rational::parse(r.to_string()) == r);
}

TEST_CASE("rational ceil/floor multiplication") {
  CHECK(Rational(1, 2).ceil_mul(75) == 38);
  CHECK(Rational(1, 10).ceil_mul(100) == 10);
  CHECK(Rational(1).ceil_mul(50) == 50);
  CHECK(Rational(1, 2).floor_mul(75) == 37);
  CHECK(Rational(9, 10).floor_mul(10) == 9);
  CHECK(Rational(1, 4).ceil_mul(34) == 9);
  CHECK(Rational(3, 4).ceil_mul(34) == 26);
}

TEST_CASE("certified power examples") {
  const Rational g09(9, 10), g10(1), g11(11, 10);

  // ceil(v^(1/gamma))
  CHECK(glcip::ceil_root_power(9, g11) == 8);
  CHECK(glcip::ceil_root_power(6, g11) == 6);
  CHECK(glcip::ceil_root_power(9, g09) == 12);
  CHECK(glcip::ceil_root_power(9, g10) == 9);
  CHECK(glcip::ceil_root_power(0, g09) == 0);

  // floor(v^gamma): the benchmark cost curve
  CHECK(glcip::floor_power(9, g09) == 7);
  CHECK(glcip::floor_power(34, g09) == 23);
  CHECK(glcip::floor_power(17, g09) == 12);
  CHECK(glcip::floor_power(26, g09) == 18);
  CHECK(glcip::floor_power(0, g09) == 0);
  CHECK(glcip::floor_power(1, g09) == 1);

  // round-to-nearest of v^gamma
  CHECK(glcip::round_power(9, g11) == 11);   // 9^1.1 = 11.2123...
  CHECK(glcip::round_power(2, g09) == 2);    // 2^0.9 = 1.866...
  CHECK(glcip::round_power(7, g10) == 7);
  CHECK(glcip::round_power(0, g11) == 0);

  CHECK(glcip::power_less_than(2, g09, 2));       // 1.866 < 2
  CHECK(!glcip::power_less_than(2, g11, 2));      // 2.14 >= 2
  CHECK(glcip::power_less_than(0, g11, 1));
  CHECK(!glcip::power_less_than(5, g10, 5));
}

TEST_CASE("certified powers satisfy their defining inequalities") {
  using BigInt = boost::multiprecision::cpp_int;
  auto ipow = [](std::int64_t base, std::int64_t e) {
    BigInt r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= base;
    return r;
  };
  for (const Rational& g : {Rational(9, 10), Rational(11, 10), Rational(1), Rational(2), Rational(1, 2)}) {
    const std::int64_t a = g.num(), b = g.den();
    for (std::int64_t v = 1; v <= 400; v += 7) {
      std::int64_t c = glcip::ceil_root_power(v, g);
      CHECK(ipow(c, a) >= ipow(v, b));
      if (c > 1) CHECK(ipow(c - 1, a) < ipow(v, b));

      std::int64_t f = glcip::floor_power(v, g);
      CHECK(ipow(f, b) <= ipow(v, a));
      CHECK(ipow(f + 1, b) > ipow(v, a));

      std::int64_t r = glcip::round_power(v, g);
      // r - 1/2 <= v^(a/b) < r + 1/2
      CHECK(ipow(2 * r + 1, b) > ipow(2, b) * ipow(v, a));
      if (r > 0) CHECK(ipow(2 * r - 1, b) <= ipow(2, b) * ipow(v, a));
    }
  }
}
