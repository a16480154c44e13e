#include "qmod/ir/pool.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmod::ir {

std::vector<QubitId> QubitPool::alloc(int n) {
  if (n < 1) throw InvalidCount("cannot allocate " + std::to_string(n) + " qubits");
  std::vector<QubitId> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    QubitId id;
    if (recycle_ && !free_.empty()) {
      id = free_.back();
      free_.pop_back();
    } else {
      id = next_++;
    }
    live_.insert(id);
    out.push_back(id);
  }
  return out;
}

void QubitPool::release(const std::vector<QubitId>& ids) {
  for (QubitId id : ids) {
    if (!live_.erase(id)) throw std::logic_error("release of non-live qubit q" + std::to_string(id));
    free_.push_back(id);
  }
}

void QubitPool::claim(QubitId id) {
  if (live_.count(id)) throw std::logic_error("claim of live qubit q" + std::to_string(id));
  auto it = std::find(free_.begin(), free_.end(), id);
  if (it != free_.end()) free_.erase(it);
  while (next_ < id) free_.insert(free_.begin(), next_++);
  if (next_ == id) ++next_;
  live_.insert(id);
}

}  // namespace qmod::ir
