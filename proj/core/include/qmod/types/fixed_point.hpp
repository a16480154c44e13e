#pragma once

#include <string>
#include <vector>

#include "qmod/common/rational.hpp"
#include "qmod/common/source.hpp"

namespace qmod::types {

class SizeMismatch : public Error {
 public:
  explicit SizeMismatch(const std::string& m) : Error("SizeMismatch", m) {}
};

class NotRepresentable : public Error {
 public:
  explicit NotRepresentable(const std::string& m) : Error("NotRepresentable", m) {}
};

/// Numeric interpretation of a qubit register: value = code * 2^-fraction_digits,
/// with two's complement codes when signed.
struct FixedPointFormat {
  int size = 1;
  bool is_signed = false;
  int fraction_digits = 0;

  FixedPointFormat() = default;
  FixedPointFormat(int size, bool is_signed, int fraction_digits);

  /// Throws std::invalid_argument when the invariants do not hold.
  void validate() const;
  bool valid() const;

  Rational min_value() const;
  Rational max_value() const;
  Rational ulp() const { return pow2(-fraction_digits); }
  /// True when v is a representable value of this format.
  bool contains(const Rational& v) const;

  std::string to_string() const;
  friend bool operator==(const FixedPointFormat&, const FixedPointFormat&) = default;
};

/// LSB-first bit string.
using Bits = std::vector<bool>;

Rational decode(const Bits& bits, const FixedPointFormat& fmt);
Bits encode(const Rational& value, const FixedPointFormat& fmt);

/// Unsigned register code (bit i = qubit i) to value.
Rational decode_code(const BigInt& code, const FixedPointFormat& fmt);
/// Value to unsigned register code in [0, 2^size).
BigInt encode_code(const Rational& value, const FixedPointFormat& fmt);
/// Every representable value, ascending by code.
std::vector<Rational> domain(const FixedPointFormat& fmt);

/// Reduces an integer into the code space of `size` bits.
BigInt wrap_code(const BigInt& k, int size);

}  // namespace qmod::types
