#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace lreg {

using BigInt = mpz_class;
using Rational = mpq_class;

// "num/den" with den > 0; integers render as "n/1".
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

Rational make_rational(std::int64_t num, std::int64_t den = 1);
// num/den in lowest terms.
Rational ratio(const BigInt& num, const BigInt& den);
BigInt floor(const Rational& q);

bool is_prime(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);  // ascending
std::map<std::int64_t, int> factorize(std::int64_t n);
bool is_squarefree(std::int64_t n);

// Nonnegative residue of a mod m (m > 0).
std::int64_t mod_floor(std::int64_t a, std::int64_t m);
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);  // throws if gcd != 1
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

// Parses "d:r,d:r" into an ordered map; throws InvalidArgument on bad syntax.
std::map<std::int64_t, std::int64_t> parse_exponent_map(const std::string& text);
std::string format_exponent_map(const std::map<std::int64_t, std::int64_t>& m);

}  // namespace lreg
