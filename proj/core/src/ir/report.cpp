#include "qmod/ir/report.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace qmod::ir {

namespace {

std::size_t cx_cost(const Gate& g) {
  switch (g.kind) {
    case GateKind::CX: return 1;
    case GateKind::CP: return 2;
    case GateKind::SWAP: return 3;
    case GateKind::CCX: return 6;
    case GateKind::MCX: return 6 * (2 * (g.qubits.size() - 1) - 3);
    case GateKind::MCP: return 6 * 2 * (g.qubits.size() - 2) + 2;
    default: return 0;
  }
}

}  // namespace

ResourceReport resource_report(const Circuit& c) {
  ResourceReport r;
  std::unordered_map<QubitId, std::size_t> layer;
  for (const Event& e : c.events) {
    if (e.kind == Event::Kind::Alloc) {
      ++r.allocations;
      r.allocated_qubits += e.ids.size();
    } else if (e.kind == Event::Kind::Release) {
      r.released_qubits += e.ids.size();
    }
    if (!e.is_gate()) continue;
    const Gate& g = e.gate;
    ++r.gate_counts[to_string(g.kind)];
    ++r.total_gates;
    r.cx_equivalent += cx_cost(g);
    std::size_t top = 0;
    for (QubitId q : g.qubits) top = std::max(top, layer[q]);
    for (QubitId q : g.qubits) layer[q] = top + 1;
    r.depth = std::max(r.depth, top + 1);
  }
  r.width = c.width();
  return r;
}

std::string ResourceReport::to_string() const {
  std::ostringstream os;
  os << "gates\t" << total_gates << "\n";
  for (const auto& [k, n] : gate_counts) os << "gate." << k << "\t" << n << "\n";
  os << "cx_equivalent\t" << cx_equivalent << "\n";
  os << "depth\t" << depth << "\n";
  os << "width\t" << width << "\n";
  os << "allocations\t" << allocations << "\n";
  os << "allocated_qubits\t" << allocated_qubits << "\n";
  os << "released_qubits\t" << released_qubits << "\n";
  return os.str();
}

}  // namespace qmod::ir
