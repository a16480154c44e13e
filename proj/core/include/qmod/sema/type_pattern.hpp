#pragma once

#include <memory>
#include <optional>
#include <string>

#include "qmod/common/source.hpp"
#include "qmod/types/qtype.hpp"

namespace qmod::sema {

class TypeMismatch : public Error {
 public:
  TypeMismatch(const std::string& m, SourceSpan s = {}) : Error("TypeMismatch", m, s) {}
};

/// A declared quantum type that may leave parts open: `qnum` without
/// attributes, `qarray[...]` without a length, or generic elements.
struct TypePattern {
  using Kind = types::QType::Kind;

  Kind kind = Kind::Bit;
  std::optional<types::FixedPointFormat> format;  // Num; nullopt = generic
  std::shared_ptr<const TypePattern> element;     // Array
  std::optional<int> length;                      // Array; nullopt = unsized
  std::optional<types::QType> record;             // Record

  static TypePattern bit();
  static TypePattern num(std::optional<types::FixedPointFormat> fmt = std::nullopt);
  static TypePattern array(TypePattern element, std::optional<int> length = std::nullopt);
  static TypePattern of(const types::QType& t);

  bool is_concrete() const;
  types::QType to_qtype() const;
  std::string to_string() const;
};

/// Concrete view of `object` through `pattern`: open parts are taken from the
/// object; a structured view that does not fit falls back to the packed view
/// (qubit-array or unsigned integer over all of the object's qubits).
types::QType complete(const TypePattern& pattern, const types::QType& object);

}  // namespace qmod::sema
