#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qmod/types/fixed_point.hpp"

namespace qmod::types {

/// Fully resolved quantum type. Every QType has a known total qubit count.
class QType {
 public:
  enum class Kind { Bit, Num, Array, Record };

  struct Field {
    std::string name;
    std::shared_ptr<const QType> type;
  };

  static QType bit();
  static QType num(FixedPointFormat fmt);
  static QType array(QType element, int length);
  static QType record(std::string name, std::vector<Field> fields);

  Kind kind() const { return kind_; }
  bool is_bit() const { return kind_ == Kind::Bit; }
  bool is_num() const { return kind_ == Kind::Num; }
  bool is_array() const { return kind_ == Kind::Array; }
  bool is_record() const { return kind_ == Kind::Record; }

  int size() const { return size_; }
  const FixedPointFormat& format() const { return fmt_; }
  const QType& element() const { return *element_; }
  int length() const { return length_; }
  const std::string& record_name() const { return name_; }
  const std::vector<Field>& fields() const { return fields_; }

  /// Bit offset of a record field, or nullopt.
  std::optional<std::pair<int, const QType*>> field(const std::string& name) const;

  /// Numeric view of the whole object: the format for qnum, (n, unsigned, 0)
  /// for everything else.
  FixedPointFormat numeric_view() const;

  std::string to_string() const;
  friend bool operator==(const QType& a, const QType& b);

 private:
  Kind kind_ = Kind::Bit;
  int size_ = 1;
  FixedPointFormat fmt_{};
  std::shared_ptr<const QType> element_;
  int length_ = 0;
  std::string name_;
  std::vector<Field> fields_;
};

}  // namespace qmod::types
