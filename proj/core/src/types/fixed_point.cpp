#include "qmod/types/fixed_point.hpp"

#include <stdexcept>

namespace qmod::types {

FixedPointFormat::FixedPointFormat(int size, bool is_signed, int fraction_digits)
    : size(size), is_signed(is_signed), fraction_digits(fraction_digits) {
  validate();
}

bool FixedPointFormat::valid() const {
  if (size < 1 || fraction_digits < 0 || fraction_digits > size) return false;
  if (is_signed && size < fraction_digits + 1) return false;
  return true;
}

void FixedPointFormat::validate() const {
  if (!valid()) throw std::invalid_argument("invalid fixed-point format " + to_string());
}

Rational FixedPointFormat::min_value() const {
  if (!is_signed) return Rational(0);
  return -Rational(pow2_int(static_cast<unsigned>(size - 1))) * ulp();
}

Rational FixedPointFormat::max_value() const {
  BigInt top = is_signed ? pow2_int(static_cast<unsigned>(size - 1))
                         : pow2_int(static_cast<unsigned>(size));
  return Rational(top - 1) * ulp();
}

bool FixedPointFormat::contains(const Rational& v) const {
  if (v < min_value() || v > max_value()) return false;
  return is_integer(v * pow2(fraction_digits));
}

std::string FixedPointFormat::to_string() const {
  return "qnum[" + std::to_string(size) + ", " + (is_signed ? "signed" : "unsigned") + ", " +
         std::to_string(fraction_digits) + "]";
}

BigInt wrap_code(const BigInt& k, int size) {
  BigInt mod = pow2_int(static_cast<unsigned>(size));
  BigInt r = k % mod;
  if (r < 0) r += mod;
  return r;
}

Rational decode_code(const BigInt& code, const FixedPointFormat& fmt) {
  BigInt k = code;
  if (fmt.is_signed && bit_test(code, static_cast<unsigned>(fmt.size - 1)))
    k -= pow2_int(static_cast<unsigned>(fmt.size));
  return Rational(k) * fmt.ulp();
}

BigInt encode_code(const Rational& value, const FixedPointFormat& fmt) {
  if (!fmt.contains(value))
    throw NotRepresentable(to_string(value) + " is not representable in " + fmt.to_string());
  BigInt k = numerator(value * pow2(fmt.fraction_digits));
  return wrap_code(k, fmt.size);
}

Rational decode(const Bits& bits, const FixedPointFormat& fmt) {
  if (static_cast<int>(bits.size()) != fmt.size)
    throw SizeMismatch("bit string of length " + std::to_string(bits.size()) +
                       " does not match " + fmt.to_string());
  BigInt code = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) bit_set(code, static_cast<unsigned>(i));
  return decode_code(code, fmt);
}

Bits encode(const Rational& value, const FixedPointFormat& fmt) {
  BigInt code = encode_code(value, fmt);
  Bits bits(static_cast<std::size_t>(fmt.size));
  for (int i = 0; i < fmt.size; ++i) bits[static_cast<std::size_t>(i)] = bit_test(code, static_cast<unsigned>(i));
  return bits;
}

std::vector<Rational> domain(const FixedPointFormat& fmt) {
  if (fmt.size > 24) throw std::invalid_argument("domain enumeration limited to 24 bits");
  std::vector<Rational> out;
  std::uint64_t n = 1ULL << fmt.size;
  out.reserve(n);
  for (std::uint64_t c = 0; c < n; ++c) out.push_back(decode_code(BigInt(c), fmt));
  return out;
}

}  // namespace qmod::types
