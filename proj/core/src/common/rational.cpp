#include "qmod/common/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace qmod {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

BigInt pow2_int(unsigned k) {
  BigInt one = 1;
  return one << k;
}

Rational pow2(int k) {
  if (k >= 0) return Rational(pow2_int(static_cast<unsigned>(k)));
  return Rational(BigInt(1), pow2_int(static_cast<unsigned>(-k)));
}

bool is_integer(const Rational& v) { return denominator(v) == 1; }

BigInt floor_int(const Rational& v) {
  BigInt n = numerator(v);
  BigInt d = denominator(v);
  BigInt q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

Rational floor_to(const Rational& v, int frac) {
  return Rational(floor_int(v * pow2(frac))) * pow2(-frac);
}

Rational round_to(const Rational& v, int frac) {
  return Rational(floor_int(v * pow2(frac) + Rational(1, 2))) * pow2(-frac);
}

std::optional<int> dyadic_digits(const Rational& v, int limit) {
  BigInt d = denominator(v);
  int f = 0;
  while (d > 1) {
    if ((d & 1) != 0) return std::nullopt;
    d >>= 1;
    if (++f > limit) return std::nullopt;
  }
  return f;
}

double to_double(const Rational& v) { return v.convert_to<double>(); }

Rational from_double(double d) {
  if (!std::isfinite(d)) throw std::domain_error("non-finite value has no rational form");
  if (d == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(d, &exp);  // d = mant * 2^exp, |mant| in [0.5, 1)
  // 53 mantissa bits make the scaled value an exact integer.
  double scaled = std::ldexp(mant, 53);
  auto m = static_cast<std::int64_t>(scaled);
  return Rational(BigInt(m)) * pow2(exp - 53);
}

Rational parse_decimal(std::string_view text) {
  std::string s(text);
  int exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    std::string digits = s.substr(e + 1);
    if (digits.size() > 5) throw std::out_of_range("decimal exponent too large");
    exp10 = std::stoi(digits);
    s = s.substr(0, e);
  }
  BigInt digits = 0;
  int frac_digits = 0;
  bool seen_point = false;
  for (char c : s) {
    if (c == '.') {
      seen_point = true;
      continue;
    }
    digits = digits * 10 + (c - '0');
    if (seen_point) ++frac_digits;
  }
  int scale = exp10 - frac_digits;
  BigInt ten = 1;
  for (int i = 0; i < std::abs(scale); ++i) ten *= 10;
  if (scale >= 0) return Rational(digits * ten);
  return Rational(digits, ten);
}

std::string to_string(const Rational& v) {
  auto digits = dyadic_digits(v, 256);
  if (!digits) return numerator(v).str() + "/" + denominator(v).str();
  if (*digits == 0) return numerator(v).str();
  // A dyadic value with f fractional bits has exactly f decimal digits.
  BigInt scaled = numerator(v) * boost::multiprecision::pow(BigInt(5), static_cast<unsigned>(*digits));
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s = scaled.str();
  if (s.size() <= static_cast<std::size_t>(*digits)) s.insert(0, *digits + 1 - s.size(), '0');
  s.insert(s.size() - *digits, ".");
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return neg ? "-" + s : s;
}

std::int64_t to_int64(const BigInt& v) {
  if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) throw std::overflow_error("integer out of range");
  return v.convert_to<std::int64_t>();
}

}  // namespace qmod
