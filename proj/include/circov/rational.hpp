#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace circov {

/// Arbitrary precision integer and canonical rational (gcd(num, den) = 1, den > 0).
using BigInt = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// num/den in canonical form. Throws InvalidArgument when den == 0.
Rational ratio(long num, long den);
Rational ratio(const BigInt& num, const BigInt& den);

BigInt ceil(const Rational& q);
BigInt floor(const Rational& q);

/// Parses "p/q", an integer, or a finite decimal ("0.125", "-2.5e-1").
/// Decimals are converted exactly; nothing is rounded.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

/// Decimal approximation with `digits` significant digits, for display only.
std::string to_decimal(const Rational& q, int digits = 12);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational sum(std::span<const Rational> a);

/// Rank over the rationals by fraction-free Gaussian elimination.
/// Rows must all have the same length.
int rank_rational(const std::vector<RationalVector>& rows);

}  // namespace circov
