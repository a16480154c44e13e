#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qmod {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// 2^k for any integer k (negative k yields a dyadic fraction).
Rational pow2(int k);
BigInt pow2_int(unsigned k);

bool is_integer(const Rational& v);
BigInt floor_int(const Rational& v);
/// Largest multiple of 2^(-frac) not above v.
Rational floor_to(const Rational& v, int frac);
/// Nearest multiple of 2^(-frac); ties round up.
Rational round_to(const Rational& v, int frac);
/// Minimal f >= 0 with v * 2^f integral, or nullopt when v is not dyadic
/// (or needs more than `limit` digits).
std::optional<int> dyadic_digits(const Rational& v, int limit = 4096);

double to_double(const Rational& v);
/// Exact conversion; every finite double is a dyadic rational.
Rational from_double(double d);
/// Parses decimal literals such as "12", "0.8125", "1e-3" exactly.
Rational parse_decimal(std::string_view text);

/// Decimal rendering for dyadic values ("1.875", "-0.5", "3"); "p/q" otherwise.
std::string to_string(const Rational& v);

std::int64_t to_int64(const BigInt& v);

}  // namespace qmod
