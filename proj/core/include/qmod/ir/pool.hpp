#pragma once

#include <set>
#include <vector>

#include "qmod/common/source.hpp"
#include "qmod/ir/gate.hpp"

namespace qmod::ir {

class InvalidCount : public Error {
 public:
  explicit InvalidCount(const std::string& m) : Error("InvalidCount", m) {}
};

/// Virtual qubit allocator. Released ids go onto a LIFO free list and are
/// handed out again before fresh ids, unless recycling is disabled.
class QubitPool {
 public:
  explicit QubitPool(bool recycle = true) : recycle_(recycle) {}

  std::vector<QubitId> alloc(int n);
  void release(const std::vector<QubitId>& ids);
  /// Marks a specific id live (used when replaying an existing event list).
  void claim(QubitId id);

  bool is_live(QubitId id) const { return live_.count(id) != 0; }
  std::size_t live_count() const { return live_.size(); }
  const std::set<QubitId>& live() const { return live_; }
  QubitId next_fresh() const { return next_; }
  bool recycling() const { return recycle_; }

 private:
  bool recycle_;
  std::vector<QubitId> free_;
  std::set<QubitId> live_;
  QubitId next_ = 0;
};

}  // namespace qmod::ir
