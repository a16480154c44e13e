#include "qmod/sema/type_pattern.hpp"

namespace qmod::sema {

using types::FixedPointFormat;
using types::QType;

TypePattern TypePattern::bit() { return TypePattern{}; }

TypePattern TypePattern::num(std::optional<FixedPointFormat> fmt) {
  TypePattern p;
  p.kind = Kind::Num;
  p.format = fmt;
  return p;
}

TypePattern TypePattern::array(TypePattern element, std::optional<int> length) {
  TypePattern p;
  p.kind = Kind::Array;
  p.element = std::make_shared<const TypePattern>(std::move(element));
  p.length = length;
  return p;
}

TypePattern TypePattern::of(const QType& t) {
  switch (t.kind()) {
    case Kind::Bit: return bit();
    case Kind::Num: return num(t.format());
    case Kind::Array: return array(of(t.element()), t.length());
    case Kind::Record: {
      TypePattern p;
      p.kind = Kind::Record;
      p.record = t;
      return p;
    }
  }
  return bit();
}

bool TypePattern::is_concrete() const {
  switch (kind) {
    case Kind::Bit: return true;
    case Kind::Num: return format.has_value();
    case Kind::Array: return length.has_value() && element->is_concrete();
    case Kind::Record: return true;
  }
  return false;
}

QType TypePattern::to_qtype() const {
  switch (kind) {
    case Kind::Bit: return QType::bit();
    case Kind::Num:
      if (!format) throw TypeMismatch("type 'qnum' has no size");
      return QType::num(*format);
    case Kind::Array:
      if (!length) throw TypeMismatch("array type has no length");
      return QType::array(element->to_qtype(), *length);
    case Kind::Record: return *record;
  }
  return QType::bit();
}

std::string TypePattern::to_string() const {
  switch (kind) {
    case Kind::Bit: return "qbit";
    case Kind::Num: return format ? format->to_string() : "qnum";
    case Kind::Array:
      return "qarray[" + element->to_string() + (length ? ", " + std::to_string(*length) : "") + "]";
    case Kind::Record: return record->record_name();
  }
  return "?";
}

namespace {

[[noreturn]] void mismatch(const TypePattern& p, const QType& obj) {
  throw TypeMismatch("cannot view " + obj.to_string() + " (" + std::to_string(obj.size()) + " qubits) as " +
                     p.to_string());
}

}  // namespace

QType complete(const TypePattern& p, const QType& obj) {
  if (p.is_concrete()) {
    QType t = p.to_qtype();
    if (t.size() != obj.size()) mismatch(p, obj);
    return t;
  }
  switch (p.kind) {
    case TypePattern::Kind::Num:
      return obj.is_num() ? obj : QType::num(FixedPointFormat(obj.size(), false, 0));
    case TypePattern::Kind::Array: {
      if (obj.is_array() && (!p.length || *p.length == obj.length())) {
        try {
          QType e = complete(*p.element, obj.element());
          if (e.size() == obj.element().size()) return QType::array(e, obj.length());
        } catch (const TypeMismatch&) {
        }
      }
      const int total = obj.size();
      if (p.element->is_concrete()) {
        const int es = p.element->to_qtype().size();
        if (total % es != 0) mismatch(p, obj);
        const int n = total / es;
        if (p.length && *p.length != n) mismatch(p, obj);
        return QType::array(p.element->to_qtype(), n);
      }
      if (p.length) {
        if (*p.length <= 0 || total % *p.length != 0) mismatch(p, obj);
        const int es = total / *p.length;
        return QType::array(complete(*p.element, QType::num(FixedPointFormat(es, false, 0))), *p.length);
      }
      return QType::array(complete(*p.element, QType::num(FixedPointFormat(1, false, 0))), total);
    }
    default:
      mismatch(p, obj);
  }
}

}  // namespace qmod::sema
