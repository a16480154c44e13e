#include "qmod/types/qtype.hpp"

#include <stdexcept>

namespace qmod::types {

QType QType::bit() { return QType{}; }

QType QType::num(FixedPointFormat fmt) {
  fmt.validate();
  QType t;
  t.kind_ = Kind::Num;
  t.fmt_ = fmt;
  t.size_ = fmt.size;
  return t;
}

QType QType::array(QType element, int length) {
  if (length < 1) throw std::invalid_argument("array length must be positive");
  QType t;
  t.kind_ = Kind::Array;
  t.size_ = element.size() * length;
  t.length_ = length;
  t.element_ = std::make_shared<const QType>(std::move(element));
  return t;
}

QType QType::record(std::string name, std::vector<Field> fields) {
  if (fields.empty()) throw std::invalid_argument("record '" + name + "' has no fields");
  QType t;
  t.kind_ = Kind::Record;
  t.name_ = std::move(name);
  t.size_ = 0;
  for (const auto& f : fields) t.size_ += f.type->size();
  t.fields_ = std::move(fields);
  return t;
}

std::optional<std::pair<int, const QType*>> QType::field(const std::string& name) const {
  int offset = 0;
  for (const auto& f : fields_) {
    if (f.name == name) return std::make_pair(offset, f.type.get());
    offset += f.type->size();
  }
  return std::nullopt;
}

FixedPointFormat QType::numeric_view() const {
  if (kind_ == Kind::Num) return fmt_;
  return FixedPointFormat(size_, false, 0);
}

std::string QType::to_string() const {
  switch (kind_) {
    case Kind::Bit:
      return "qbit";
    case Kind::Num:
      return fmt_.to_string();
    case Kind::Array:
      return "qarray[" + element_->to_string() + ", " + std::to_string(length_) + "]";
    case Kind::Record:
      return name_;
  }
  return "?";
}

bool operator==(const QType& a, const QType& b) {
  if (a.kind_ != b.kind_ || a.size_ != b.size_) return false;
  switch (a.kind_) {
    case QType::Kind::Bit:
      return true;
    case QType::Kind::Num:
      return a.fmt_ == b.fmt_;
    case QType::Kind::Array:
      return a.length_ == b.length_ && *a.element_ == *b.element_;
    case QType::Kind::Record:
      return a.name_ == b.name_;
  }
  return false;
}

}  // namespace qmod::types
