#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace loopmod {

using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);
// Accepts "p", "-p", "p/q".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
bool is_integer(const Rational& q);
Rational pow(const Rational& q, long exponent);
std::int64_t to_int64(const Integer& z);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
// Non-negative remainder.
std::int64_t mod64(std::int64_t a, std::int64_t m);

} // namespace loopmod
