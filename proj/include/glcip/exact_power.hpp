#pragma once

#include <cstdint>

#include "glcip/rational.hpp"

namespace glcip {

/**
 * Certified integer arithmetic around real powers v^(a/b) for rational
 * exponents. Floating point provides the initial candidate; the returned
 * value is always verified by exact big-integer comparisons, so results
 * are never off by one at representability boundaries.
 */

/// Smallest integer c >= 0 with c >= v^(b/a), i.e. ceil(v^(1/gamma)) for gamma = a/b.
std::int64_t ceil_root_power(std::int64_t v, const Rational& gamma);

/// Largest integer w >= 0 with w <= v^(a/b), i.e. floor(v^gamma).
std::int64_t floor_power(std::int64_t v, const Rational& gamma);

/// Nearest integer to v^gamma, rounding half away from zero (v >= 0).
std::int64_t round_power(std::int64_t v, const Rational& gamma);

/// Exact test s^gamma < t for integers s >= 0, t.
bool power_less_than(std::int64_t s, const Rational& gamma, std::int64_t t);

}  // namespace glcip
