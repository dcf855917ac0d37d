#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace fanforge {

// Arbitrary-precision rational, always kept in reduced form with a positive
// denominator.
using rational = mpq_class;

// num/den in reduced form. Throws InvalidArgument when den == 0.
rational ratio(long num, long den);

// Accepts `int ["/" posint]`; the result is reduced.
rational parse_rational(std::string_view text);

// Renders `p/q`, or `p` when the denominator is 1.
std::string to_string(const rational& r);

// 2^k for any integer k.
rational pow2(long k);

// k >= 0 such that r == 2^{-k}, if any.
std::optional<unsigned long> dyadic_exponent(const rational& r);

rational abs(const rational& r);
const rational& min(const rational& a, const rational& b);
const rational& max(const rational& a, const rational& b);

std::size_t hash_value(const rational& r);

}  // namespace fanforge
